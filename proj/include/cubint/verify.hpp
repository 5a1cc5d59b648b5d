#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubint/geometry.hpp"

namespace cubint {

// Polynomial in (px, py) with Expr coefficients, keyed by (deg px, deg py).
using MomPoly = std::map<std::pair<int, int>, Expr>;

MomPoly to_poly(const SymTensor3& F);
MomPoly hamiltonian_poly(const Metric& g);
MomPoly operator+(const MomPoly& a, const MomPoly& b);
MomPoly operator*(const MomPoly& a, const MomPoly& b);
MomPoly canonical_bracket(const MomPoly& f, const MomPoly& h);
// degree -> component; zero coefficients dropped
std::map<int, MomPoly> homogeneous_components(const MomPoly& f);

// coefficients of px^4, px^3 py, px^2 py^2, px py^3, py^4 in {F, H}
using Quartic = std::array<Expr, 5>;

// structured route: complex formula for isothermal metrics, null-coordinate formula for null metrics,
// canonical bracket otherwise
Quartic bracket_FH(const SymTensor3& F, const Metric& g);
// brute force canonical bracket in (x, y, px, py)
Quartic bracket_FH_canonical(const SymTensor3& F, const Metric& g);
// null coordinates, F = A1 px^3 - A2 py^3 + (B1 px + B2 py) px py, H = px py / (2 lambda)
Quartic bracket_FH_null(const Expr& A1, const Expr& A2, const Expr& B1, const Expr& B2, const Expr& lambda);

struct Certificate {
  Quartic coeffs;
  std::array<ZeroVerdict, 5> verdicts;
  bool all_zero() const;
  bool any_nonzero() const;
};
Certificate certify(const SymTensor3& F, const Metric& g, const Box& box, const ZeroTestConfig& cfg = {});

struct PhasePoint {
  double x = 0, y = 0, px = 0, py = 0;
};

struct GeodesicSample {
  double t, x, y, px, py;
};

struct GeodesicTrajectory {
  std::vector<GeodesicSample> samples;
  double dt = 0;
  std::string integrator = "rk4";
  std::string error;  // set when evaluation left the domain; samples hold the partial trajectory
};

GeodesicTrajectory integrate_geodesic(const Metric& g, const PhasePoint& start, int steps, double dt);

struct DriftReport {
  double h0 = 0, max_dH = 0;
  std::optional<double> f0, max_dF;
  std::size_t samples = 0;
};
DriftReport conservation_report(const GeodesicTrajectory& traj, const Metric& g,
                                const std::optional<SymTensor3>& F = std::nullopt);
// columns t,x,y,px,py,H,F
void write_csv(std::ostream& os, const GeodesicTrajectory& traj, const Metric& g,
               const std::optional<SymTensor3>& F = std::nullopt);

}  // namespace cubint
