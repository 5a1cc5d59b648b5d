#include <algorithm>
#include <map>
#include <unordered_map>

#include "cubint/expr.hpp"

namespace cubint {

namespace {

struct BudgetExceeded {};

using Mono = std::vector<int>;
struct MonoGreater {
  bool operator()(const Mono& a, const Mono& b) const { return a > b; }
};
using Poly = std::map<Mono, mpq_class, MonoGreater>;

struct Ctx {
  std::size_t nsym = 0;
  std::size_t budget = 20000;
  std::vector<Expr> atoms;
  std::vector<std::string> notes;

  void check(const Poly& p) const {
    if (p.size() > budget) throw BudgetExceeded{};
  }
  Poly constant(const mpq_class& c) const {
    Poly p;
    if (c != 0) p[Mono(nsym, 0)] = c;
    return p;
  }
  Poly symbol(std::size_t i, int e = 1) const {
    Poly p;
    Mono m(nsym, 0);
    m[i] = e;
    p[m] = 1;
    return p;
  }
};

void padd_into(Poly& a, const Poly& b, const mpq_class& s = 1) {
  for (const auto& [m, c] : b) {
    auto it = a.find(m);
    if (it == a.end()) {
      a.emplace(m, s * c);
    } else {
      it->second += s * c;
      if (it->second == 0) a.erase(it);
    }
  }
}

Poly pmul(const Ctx& cx, const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Mono m(cx.nsym);
      for (std::size_t i = 0; i < cx.nsym; ++i) m[i] = ma[i] + mb[i];
      auto it = r.find(m);
      if (it == r.end()) {
        r.emplace(std::move(m), ca * cb);
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.erase(it);
      }
    }
    cx.check(r);
  }
  return r;
}

Poly ppow(const Ctx& cx, const Poly& a, int n) {
  Poly r = cx.constant(1);
  Poly b = a;
  while (n) {
    if (n & 1) r = pmul(cx, r, b);
    n >>= 1;
    if (n) b = pmul(cx, b, b);
  }
  return r;
}

bool is_const(const Poly& p) {
  if (p.empty()) return true;
  if (p.size() > 1) return false;
  for (int e : p.begin()->first)
    if (e) return false;
  return true;
}

// exact division in lex order; false when d does not divide f
bool pdiv(const Ctx& cx, Poly f, const Poly& d, Poly& q) {
  q.clear();
  const auto& [ld, lc] = *d.begin();
  std::size_t steps = 0;
  while (!f.empty()) {
    const auto& [lf, cf] = *f.begin();
    Mono m(cx.nsym);
    for (std::size_t i = 0; i < cx.nsym; ++i) {
      m[i] = lf[i] - ld[i];
      if (m[i] < 0) return false;
    }
    mpq_class c = cf / lc;
    Poly t;
    t[m] = c;
    padd_into(q, t);
    padd_into(f, pmul(cx, t, d), -1);
    if (++steps > cx.budget) throw BudgetExceeded{};
  }
  return true;
}

struct RF {
  Poly num;
  std::vector<std::pair<Poly, int>> den;  // monic factors with multiplicity
};

void add_factor(std::vector<std::pair<Poly, int>>& den, const Poly& f, int m) {
  for (auto& [g, k] : den) {
    if (g == f) {
      k += m;
      return;
    }
  }
  den.emplace_back(f, m);
}

Expr to_expr(const Ctx& cx, const Poly& p);

void cancel(Ctx& cx, RF& r) {
  if (r.num.empty()) {
    r.den.clear();
    return;
  }
  for (auto& [f, k] : r.den) {
    Poly q;
    while (k > 0 && pdiv(cx, r.num, f, q)) {
      r.num = std::move(q);
      --k;
      std::string note = "removable singularity cancelled where " + to_string(to_expr(cx, f)) + " = 0";
      if (std::find(cx.notes.begin(), cx.notes.end(), note) == cx.notes.end()) cx.notes.push_back(note);
    }
  }
  r.den.erase(std::remove_if(r.den.begin(), r.den.end(), [](const auto& fk) { return fk.second <= 0; }),
              r.den.end());
  std::sort(r.den.begin(), r.den.end());
}

// divide r by polynomial p, splitting off the leading coefficient and monomial content
void divide_by_poly(Ctx& cx, RF& r, const Poly& p) {
  if (p.empty()) throw DomainError("division by zero");
  mpq_class lc = p.begin()->second;
  Mono content = p.begin()->first;
  for (const auto& [m, c] : p)
    for (std::size_t i = 0; i < cx.nsym; ++i) content[i] = std::min(content[i], m[i]);
  Poly rest;
  for (const auto& [m, c] : p) {
    Mono mm(cx.nsym);
    for (std::size_t i = 0; i < cx.nsym; ++i) mm[i] = m[i] - content[i];
    rest.emplace(std::move(mm), c / lc);
  }
  for (auto& [m, c] : r.num) c /= lc;
  for (std::size_t i = 0; i < cx.nsym; ++i)
    if (content[i] > 0) add_factor(r.den, cx.symbol(i), content[i]);
  if (!is_const(rest)) add_factor(r.den, rest, 1);
  cancel(cx, r);
}

RF rf_mul(Ctx& cx, const RF& a, const RF& b) {
  RF r;
  r.num = pmul(cx, a.num, b.num);
  if (r.num.empty()) return r;
  r.den = a.den;
  for (const auto& [f, k] : b.den) add_factor(r.den, f, k);
  cancel(cx, r);
  return r;
}

RF rf_add(Ctx& cx, const RF& a, const RF& b) {
  if (a.num.empty()) return b;
  if (b.num.empty()) return a;
  RF r;
  r.den = a.den;
  for (const auto& [f, k] : b.den) {
    bool found = false;
    for (auto& [g, m] : r.den) {
      if (g == f) {
        m = std::max(m, k);
        found = true;
      }
    }
    if (!found) r.den.emplace_back(f, k);
  }
  auto lift = [&](const RF& s) {
    Poly p = s.num;
    for (const auto& [f, k] : r.den) {
      int have = 0;
      for (const auto& [g, m] : s.den)
        if (g == f) have = m;
      if (k > have) p = pmul(cx, p, ppow(cx, f, k - have));
    }
    return p;
  };
  r.num = lift(a);
  padd_into(r.num, lift(b));
  cx.check(r.num);
  cancel(cx, r);
  return r;
}

RF rf_inv(Ctx& cx, const RF& a) {
  RF r;
  r.num = cx.constant(1);
  for (const auto& [f, k] : a.den) r.num = pmul(cx, r.num, ppow(cx, f, k));
  divide_by_poly(cx, r, a.num);
  return r;
}

RF rf_pow(Ctx& cx, const RF& a, long n) {
  if (n == 0) {
    RF r;
    r.num = cx.constant(1);
    return r;
  }
  RF base = n < 0 ? rf_inv(cx, a) : a;
  long k = n < 0 ? -n : n;
  RF r;
  r.num = ppow(cx, base.num, static_cast<int>(k));
  for (const auto& [f, m] : base.den) r.den.emplace_back(f, m * static_cast<int>(k));
  cancel(cx, r);
  return r;
}

Expr to_expr(const Ctx& cx, const Poly& p) {
  std::vector<Expr> terms;
  for (const auto& [m, c] : p) {
    std::vector<Expr> fs{Expr(c)};
    for (std::size_t i = 0; i < cx.nsym; ++i)
      if (m[i]) fs.push_back(pow(cx.atoms[i], m[i]));
    terms.push_back(mul(std::move(fs)));
  }
  return add(std::move(terms));
}

Expr to_expr(const Ctx& cx, const RF& r) {
  std::vector<Expr> fs{to_expr(cx, r.num)};
  for (const auto& [f, k] : r.den) fs.push_back(pow(to_expr(cx, f), -k));
  return mul(std::move(fs));
}

bool is_function(Op op) { return op != Op::Num && op != Op::Pi && op != Op::E && op != Op::X && op != Op::Y &&
                                  op != Op::Pow && op != Op::Mul && op != Op::Add; }

class Converter {
 public:
  explicit Converter(Ctx& cx) : cx_(cx) {}

  // pass 1: discover atoms
  void collect(const Expr& e) {
    if (!seen_.insert({e.get(), 1}).second) return;
    switch (e.op()) {
      case Op::Num: return;
      case Op::Pi: case Op::E: case Op::X: case Op::Y: note_atom(e); return;
      case Op::Add: case Op::Mul:
        for (const auto& c : e.args()) collect(c);
        return;
      case Op::Pow:
        collect(e.args()[0]);
        if (e.q().get_den() != 1) {
          Expr t = pow(simplify(e.args()[0]), mpq_class(1, e.q().get_den()));
          rewrite_[e.get()] = t;
          if (t.op() == Op::Pow)
            note_atom(t);
          else
            collect(t);
        }
        return;
      default: {
        Expr t = apply(e.op(), simplify(e.args()[0]));
        rewrite_[e.get()] = t;
        if (is_function(t.op()))
          note_atom(t);
        else
          collect(t);
        return;
      }
    }
  }

  void finish_atoms() {
    std::sort(cx_.atoms.begin(), cx_.atoms.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
    cx_.nsym = cx_.atoms.size();
    for (std::size_t i = 0; i < cx_.atoms.size(); ++i) index_[cx_.atoms[i].get()] = i;
  }

  const RF& convert(const Expr& e) {
    auto it = memo_.find(e.get());
    if (it != memo_.end()) return it->second;
    RF r;
    switch (e.op()) {
      case Op::Num: r.num = cx_.constant(e.q()); break;
      case Op::Pi: case Op::E: case Op::X: case Op::Y: r.num = cx_.symbol(index_.at(e.get())); break;
      case Op::Add: {
        r.num = cx_.constant(0);
        for (const auto& c : e.args()) r = rf_add(cx_, r, convert(c));
        break;
      }
      case Op::Mul: {
        r.num = cx_.constant(1);
        for (const auto& c : e.args()) r = rf_mul(cx_, r, convert(c));
        break;
      }
      case Op::Pow: {
        const mpq_class& q = e.q();
        if (q.get_den() == 1) {
          r = rf_pow(cx_, convert(e.args()[0]), q.get_num().get_si());
        } else {
          long d = q.get_den().get_si();
          long n = q.get_num().get_si();
          long fl = n >= 0 ? n / d : -((-n + d - 1) / d);
          long rem = n - fl * d;
          RF whole = rf_pow(cx_, convert(e.args()[0]), fl);
          const Expr& t = rewrite_.at(e.get());
          RF root;
          if (t.op() == Op::Pow && index_.count(t.get()))
            root.num = cx_.symbol(index_.at(t.get()), 1);
          else
            root = convert(t);
          r = rf_mul(cx_, whole, rf_pow(cx_, root, rem));
        }
        break;
      }
      default: {
        const Expr& t = rewrite_.at(e.get());
        if (index_.count(t.get()))
          r.num = cx_.symbol(index_.at(t.get()));
        else
          r = convert(t);
        break;
      }
    }
    return memo_.emplace(e.get(), std::move(r)).first->second;
  }

 private:
  Ctx& cx_;
  std::unordered_map<const Node*, int> seen_;
  std::unordered_map<const Node*, Expr> rewrite_;
  std::unordered_map<const Node*, std::size_t> index_;
  std::unordered_map<const Node*, RF> memo_;
  std::unordered_map<const Node*, int> atom_seen_;

  void note_atom(const Expr& a) {
    if (atom_seen_.insert({a.get(), 1}).second) cx_.atoms.push_back(a);
  }
};

}  // namespace

Simplified simplify_ex(const Expr& e, std::size_t term_budget) {
  Simplified out{e, {}, true};
  if (e.is_num() || e.op() == Op::X || e.op() == Op::Y) return out;
  Ctx cx;
  cx.budget = term_budget;
  try {
    Converter conv(cx);
    conv.collect(e);
    conv.finish_atoms();
    const RF& r = conv.convert(e);
    out.expr = to_expr(cx, r);
    out.notes = cx.notes;
  } catch (const BudgetExceeded&) {
    out.expr = e;
    out.complete = false;
  } catch (const DomainError&) {
    out.expr = e;
    out.complete = false;
  }
  return out;
}

Expr simplify(const Expr& e) { return simplify_ex(e).expr; }

}  // namespace cubint
