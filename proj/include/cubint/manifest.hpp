#pragma once

#include <stdexcept>
#include <string>

#include "cubint/invariants.hpp"

namespace cubint {

struct ManifestError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sectioned key = value file:
//
//   [metric]          kind = isothermal | general | null
//                     lambda = "..."            (isothermal, null)
//                     g11, g12, g22 = "..."     (general), orientation = 1 | -1
//   [codifferential]  kind = isothermal-complex | general-real | null-pair
//                     re, im = "..."            (isothermal-complex, A = (re + i im) d_z^3)
//                     a111, a112, a122, a222    (general-real, components of Re A)
//                     a1, a2                    (null-pair)
//   [domain]          x = x0, x1   y = y0, y1   samples = 64   seed = 20240917
//   [tolerances]      abs = 1e-9   rel = 1e-9   seeds = 3
//
// The codifferential section may be omitted (A = 0).
struct Manifest {
  Metric metric = Metric::isothermal(1);
  Codifferential A;
  Box box;
  ZeroTestConfig cfg;
};

Manifest load_manifest(const std::string& path);
Manifest parse_manifest(const std::string& text);

// file of four components t111, t112, t122, t222 (key = value lines)
SymTensor3 load_integral(const std::string& path);
SymTensor3 parse_integral(const std::string& text);

}  // namespace cubint
