#include <cfloat>
#include <cmath>
#include <random>
#include <unordered_map>

#include "cubint/expr.hpp"

namespace cubint {

namespace {

long double to_ld(const mpq_class& q) {
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p())
    return static_cast<long double>(q.get_num().get_si()) / static_cast<long double>(q.get_den().get_si());
  return static_cast<long double>(q.get_d());
}

long double ipow(long double b, long n) {
  bool inv = n < 0;
  unsigned long k = static_cast<unsigned long>(inv ? -n : n);
  long double r = 1;
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return inv ? 1 / r : r;
}

}  // namespace

Tape::Tape(const std::vector<Expr>& roots) {
  std::unordered_map<const Node*, std::uint32_t> index;
  // iterative post-order
  struct Frame {
    const Expr* e;
    std::size_t next;
  };
  for (const auto& root : roots) {
    if (index.count(root.get())) {
      roots_.push_back(index[root.get()]);
      continue;
    }
    std::vector<Frame> st{{&root, 0}};
    while (!st.empty()) {
      Frame& f = st.back();
      const auto& a = f.e->args();
      if (f.next < a.size()) {
        const Expr* c = &a[f.next++];
        if (!index.count(c->get())) st.push_back({c, 0});
        continue;
      }
      const Expr& e = *f.e;
      Ins in;
      in.op = e.op();
      if (e.op() == Op::Num) in.c = to_ld(e.q());
      if (e.op() == Op::Pi) in.c = 3.141592653589793238462643383279502884L;
      if (e.op() == Op::E) in.c = 2.718281828459045235360287471352662498L;
      if (e.op() == Op::Pow) {
        in.c = to_ld(e.q());
        in.num = e.q().get_num().fits_slong_p() ? e.q().get_num().get_si() : 0;
        in.den = e.q().get_den().fits_slong_p() ? e.q().get_den().get_si() : 1;
      }
      in.first = static_cast<std::uint32_t>(argv_.size());
      in.count = static_cast<std::uint32_t>(a.size());
      for (const auto& c : a) argv_.push_back(index.at(c.get()));
      index[e.get()] = static_cast<std::uint32_t>(ins_.size());
      ins_.push_back(in);
      st.pop_back();
    }
    roots_.push_back(index.at(root.get()));
  }
  v_.resize(ins_.size());
  m_.resize(ins_.size());
}

void Tape::eval(long double x, long double y, std::vector<long double>& out, std::vector<long double>* mag) const {
  const bool track = mag != nullptr;
  for (std::size_t i = 0; i < ins_.size(); ++i) {
    const Ins& in = ins_[i];
    const std::uint32_t* a = argv_.data() + in.first;
    long double v = 0, m = 0;
    switch (in.op) {
      case Op::Num: case Op::Pi: case Op::E: v = in.c; m = std::fabs(v); break;
      case Op::X: v = x; m = std::fabs(v); break;
      case Op::Y: v = y; m = std::fabs(v); break;
      case Op::Add:
        for (std::uint32_t k = 0; k < in.count; ++k) {
          v += v_[a[k]];
          if (track) m += m_[a[k]] + std::fabs(v_[a[k]]);
        }
        break;
      case Op::Mul: {
        v = 1;
        for (std::uint32_t k = 0; k < in.count; ++k) v *= v_[a[k]];
        if (track) {
          // sum_i m_i * prod_{j != i} |v_j|
          long double pre = 1;
          for (std::uint32_t k = 0; k < in.count; ++k) {
            long double rest = pre;
            for (std::uint32_t j = k + 1; j < in.count; ++j) rest *= std::fabs(v_[a[j]]);
            m += m_[a[k]] * rest;
            pre *= std::fabs(v_[a[k]]);
          }
          m += std::fabs(v);
        }
        break;
      }
      case Op::Pow: {
        long double b = v_[a[0]];
        if (in.den == 1 && in.num != 0) {
          if (in.num < 0 && b == 0) throw EvalDomainError("division by zero");
          v = ipow(b, in.num);
        } else {
          if (b < 0 && in.den % 2 == 0) throw EvalDomainError("even root of a negative number");
          if (b == 0 && in.c < 0) throw EvalDomainError("division by zero");
          v = std::pow(std::fabs(b), in.c);
          if (b < 0 && (in.num % 2 != 0)) v = -v;
        }
        if (track) {
          long double d = b != 0 ? std::fabs(in.c * v / b) : (in.c >= 1 ? 0 : INFINITY);
          m = d * m_[a[0]] + std::fabs(v);
        }
        break;
      }
      default: {
        long double u = v_[a[0]];
        long double d = 0;
        switch (in.op) {
          case Op::Sin: v = std::sin(u); d = std::cos(u); break;
          case Op::Cos: v = std::cos(u); d = std::sin(u); break;
          case Op::Tan: v = std::tan(u); d = 1 + v * v; break;
          case Op::Exp: v = std::exp(u); d = v; break;
          case Op::Ln:
            if (u <= 0) throw EvalDomainError("ln of a non-positive number");
            v = std::log(u);
            d = 1 / u;
            break;
          case Op::Sinh: v = std::sinh(u); d = std::cosh(u); break;
          case Op::Cosh: v = std::cosh(u); d = std::sinh(u); break;
          case Op::Tanh: v = std::tanh(u); d = 1 - v * v; break;
          default: break;
        }
        if (track) m = std::fabs(d) * m_[a[0]] + std::fabs(v);
        break;
      }
    }
    if (!std::isfinite(v)) throw EvalDomainError("non-finite value");
    v_[i] = v;
    if (track) m_[i] = m;
  }
  out.resize(roots_.size());
  for (std::size_t r = 0; r < roots_.size(); ++r) out[r] = v_[roots_[r]];
  if (mag) {
    mag->resize(roots_.size());
    for (std::size_t r = 0; r < roots_.size(); ++r) (*mag)[r] = m_[roots_[r]];
  }
}

long double Tape::eval1(long double x, long double y) const {
  std::vector<long double> out;
  eval(x, y, out);
  return out[0];
}

double eval_at(const Expr& e, double x, double y) { return static_cast<double>(Tape(e).eval1(x, y)); }

std::vector<std::pair<double, double>> probe_points(const Box& box, std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(box.x0, box.x1), uy(box.y0, box.y1);
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    double px = ux(rng);
    double py = uy(rng);
    pts.emplace_back(px, py);
  }
  return pts;
}

ZeroVerdict is_zero(const Expr& e, const Box& box, const ZeroTestConfig& cfg) {
  ZeroVerdict zv;
  if (e.is_zero()) {
    zv.kind = ZeroVerdict::Zero;
    zv.symbolic = true;
    return zv;
  }
  if (!(box.x1 > box.x0) || !(box.y1 > box.y0)) {
    zv.reason = "degenerate domain box";
    return zv;
  }
  if (dag_size(e) <= cfg.symbolic_limit) {
    Simplified s = simplify_ex(e, 4000);
    if (s.complete && s.expr.is_zero()) {
      zv.kind = ZeroVerdict::Zero;
      zv.symbolic = true;
      return zv;
    }
  }
  Tape tape(e);
  std::vector<long double> out, mag;
  int total = 0, failed = 0;
  for (int s = 0; s < cfg.seeds; ++s) {
    auto pts = probe_points(box, cfg.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(s), cfg.samples);
    for (auto [px, py] : pts) {
      ++total;
      try {
        tape.eval(px, py, out, &mag);
      } catch (const EvalDomainError&) {
        ++failed;
        continue;
      }
      long double thr = cfg.abs_tol + cfg.rel_tol * mag[0];
      if (std::fabs(out[0]) > thr) {
        zv.kind = ZeroVerdict::NonZero;
        zv.wx = px;
        zv.wy = py;
        zv.value = static_cast<double>(out[0]);
        zv.threshold = static_cast<double>(thr);
        return zv;
      }
    }
  }
  if (failed > cfg.max_domain_failure * total || failed == total) {
    zv.kind = ZeroVerdict::Unknown;
    zv.reason = "evaluation failed at " + std::to_string(failed) + " of " + std::to_string(total) + " probes";
    return zv;
  }
  zv.kind = ZeroVerdict::Zero;
  return zv;
}

}  // namespace cubint
