#include "cubint/expr.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

namespace cubint {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v *= 0x9E3779B97F4A7C15ULL;
  v ^= v >> 31;
  h ^= v + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_mpz(mpz_srcptr z) {
  std::uint64_t h = static_cast<std::uint64_t>(mpz_sgn(z)) + 7;
  std::size_t n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) h = mix(h, mpz_getlimbn(z, i));
  return h;
}

std::uint64_t hash_node(Op op, const mpq_class& q, const std::vector<Expr>& a) {
  std::uint64_t h = mix(0x51ED270B27A1F3C5ULL, static_cast<std::uint64_t>(op));
  if (op == Op::Num || op == Op::Pow) {
    h = mix(h, hash_mpz(q.get_num_mpz_t()));
    h = mix(h, hash_mpz(q.get_den_mpz_t()));
  }
  for (const auto& c : a) h = mix(h, c.hash());
  return h;
}

struct Table {
  std::mutex m;
  std::unordered_multimap<std::uint64_t, std::weak_ptr<const Node>> map;
  std::size_t sweep_at = 1 << 16;
};

Table& table() {
  static Table* t = new Table;
  return *t;
}

Expr make(Op op, const mpq_class& q, std::vector<Expr> a) {
  std::uint64_t h = hash_node(op, q, a);
  Table& t = table();
  std::lock_guard<std::mutex> lock(t.m);
  auto [lo, hi] = t.map.equal_range(h);
  for (auto it = lo; it != hi; ++it) {
    auto sp = it->second.lock();
    if (!sp || sp->op != op || sp->a.size() != a.size()) continue;
    if ((op == Op::Num || op == Op::Pow) && sp->q != q) continue;
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i) same = sp->a[i] == a[i];
    if (same) return Expr(sp);
  }
  auto n = std::make_shared<Node>();
  n->op = op;
  n->h = h;
  n->q = q;
  n->a = std::move(a);
  std::shared_ptr<const Node> cn = n;
  t.map.emplace(h, cn);
  if (t.map.size() > t.sweep_at) {
    for (auto it = t.map.begin(); it != t.map.end();) {
      if (it->second.expired())
        it = t.map.erase(it);
      else
        ++it;
    }
    t.sweep_at = std::max<std::size_t>(1 << 16, 2 * t.map.size());
  }
  return Expr(cn);
}

const mpq_class kZero(0), kOne(1);

Expr num(const mpq_class& q) { return make(Op::Num, q, {}); }

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

// order used inside Add/Mul nodes: cheap and deterministic
bool hash_less(const Expr& a, const Expr& b) {
  if (a.hash() != b.hash()) return a.hash() < b.hash();
  return compare(a, b) < 0;
}

std::pair<mpq_class, Expr> split_coeff(const Expr& t) {
  if (t.op() == Op::Mul && t.args()[0].is_num()) {
    const auto& a = t.args();
    if (a.size() == 2) return {a[0].q(), a[1]};
    return {a[0].q(), make(Op::Mul, kZero, std::vector<Expr>(a.begin() + 1, a.end()))};
  }
  return {kOne, t};
}

Expr scale(const mpq_class& c, const Expr& rest) {
  if (c == 1) return rest;
  if (c == 0) return num(kZero);
  if (rest.is_num()) return num(c * rest.q());
  if (rest.op() == Op::Mul && rest.args()[0].is_num()) return mul({num(c), rest});
  if (rest.op() == Op::Mul) {
    std::vector<Expr> a;
    a.reserve(rest.args().size() + 1);
    a.push_back(num(c));
    a.insert(a.end(), rest.args().begin(), rest.args().end());
    return make(Op::Mul, kZero, std::move(a));
  }
  if (rest.op() == Op::Add) return mul({num(c), rest});
  return make(Op::Mul, kZero, {num(c), rest});
}

bool int_root(const mpz_class& v, unsigned long d, mpz_class& r) {
  if (v < 0 && d % 2 == 0) return false;
  mpz_class a = abs(v);
  int exact = mpz_root(r.get_mpz_t(), a.get_mpz_t(), d);
  if (!exact) return false;
  if (v < 0) r = -r;
  return true;
}

mpq_class qpow(const mpq_class& b, long e) {
  mpz_class n, d;
  unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), b.get_num_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), b.get_den_mpz_t(), ue);
  mpq_class r = e < 0 ? mpq_class(d, n) : mpq_class(n, d);
  r.canonicalize();
  return r;
}

int op_rank(Op op) {
  switch (op) {
    case Op::Num: return 0;
    case Op::Pi: return 1;
    case Op::E: return 2;
    case Op::X: return 3;
    case Op::Y: return 4;
    case Op::Add: return 20;
    case Op::Mul: return 19;
    case Op::Pow: return 18;
    default: return 5 + static_cast<int>(op);
  }
}

}  // namespace

// ---- Expr basics -------------------------------------------------------------

Expr::Expr() : Expr(num(kZero)) {}
Expr::Expr(long v) : Expr(num(mpq_class(v))) {}
Expr::Expr(const mpq_class& q) : Expr(num(q)) {}
Expr Expr::x() { static Expr v = make(Op::X, kZero, {}); return v; }
Expr Expr::y() { static Expr v = make(Op::Y, kZero, {}); return v; }
Expr Expr::pi() { static Expr v = make(Op::Pi, kZero, {}); return v; }
Expr Expr::e() { static Expr v = make(Op::E, kZero, {}); return v; }
Op Expr::op() const { return n_->op; }
const mpq_class& Expr::q() const { return n_->q; }
const std::vector<Expr>& Expr::args() const { return n_->a; }
std::uint64_t Expr::hash() const { return n_->h; }
bool Expr::is_zero() const { return n_->op == Op::Num && n_->q == 0; }
bool Expr::is_one() const { return n_->op == Op::Num && n_->q == 1; }

Expr rat(long p, long q) {
  mpq_class r(p, q);
  r.canonicalize();
  return num(r);
}

int compare(const Expr& a, const Expr& b) {
  if (a == b) return 0;
  if (a.op() == Op::Pow || b.op() == Op::Pow) {
    const Expr& ba = a.op() == Op::Pow ? a.args()[0] : a;
    const Expr& bb = b.op() == Op::Pow ? b.args()[0] : b;
    const mpq_class& ea = a.op() == Op::Pow ? a.q() : kOne;
    const mpq_class& eb = b.op() == Op::Pow ? b.q() : kOne;
    int c = compare(ba, bb);
    if (c) return c;
    return cmp(ea, eb) < 0 ? -1 : (cmp(ea, eb) > 0 ? 1 : 0);
  }
  int ra = op_rank(a.op()), rb = op_rank(b.op());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.op()) {
    case Op::Num: {
      int c = cmp(a.q(), b.q());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Op::Add:
    case Op::Mul: {
      const auto& x = a.args();
      const auto& y = b.args();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = compare(x[i], y[i]);
        if (c) return c;
      }
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      return 0;
    }
    default:
      if (!a.args().empty()) return compare(a.args()[0], b.args()[0]);
      return 0;
  }
}

// ---- constructors ---------------------------------------------------------------

Expr add(std::vector<Expr> terms) {
  mpq_class c = 0;
  std::vector<std::pair<Expr, mpq_class>> parts;
  parts.reserve(terms.size());
  std::vector<Expr> stack(terms.rbegin(), terms.rend());
  while (!stack.empty()) {
    Expr t = std::move(stack.back());
    stack.pop_back();
    if (t.op() == Op::Add) {
      for (auto it = t.args().rbegin(); it != t.args().rend(); ++it) stack.push_back(*it);
    } else if (t.is_num()) {
      c += t.q();
    } else {
      auto [k, r] = split_coeff(t);
      parts.emplace_back(r, k);
    }
  }
  std::sort(parts.begin(), parts.end(),
            [](const auto& u, const auto& v) { return hash_less(u.first, v.first); });
  std::vector<Expr> out;
  if (c != 0) out.push_back(num(c));
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    mpq_class k = 0;
    while (j < parts.size() && parts[j].first == parts[i].first) k += parts[j++].second;
    if (k != 0) out.push_back(scale(k, parts[i].first));
    i = j;
  }
  if (out.empty()) return num(kZero);
  if (out.size() == 1) return out[0];
  return make(Op::Add, kZero, std::move(out));
}

Expr mul(std::vector<Expr> factors) {
  for (int round = 0;; ++round) {
    mpq_class c = 1;
    std::vector<std::pair<Expr, mpq_class>> parts;
    std::vector<Expr> stack(factors.rbegin(), factors.rend());
    while (!stack.empty()) {
      Expr f = std::move(stack.back());
      stack.pop_back();
      if (f.op() == Op::Mul) {
        for (auto it = f.args().rbegin(); it != f.args().rend(); ++it) stack.push_back(*it);
      } else if (f.is_num()) {
        c *= f.q();
      } else if (f.op() == Op::Pow) {
        parts.emplace_back(f.args()[0], f.q());
      } else {
        parts.emplace_back(f, kOne);
      }
    }
    if (c == 0) return num(kZero);
    std::sort(parts.begin(), parts.end(),
              [](const auto& u, const auto& v) { return hash_less(u.first, v.first); });
    std::vector<Expr> out;
    bool again = false;
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      mpq_class k = 0;
      int cnt = 0;
      while (j < parts.size() && parts[j].first == parts[i].first) {
        k += parts[j++].second;
        ++cnt;
      }
      if (k != 0) {
        Expr p = cnt == 1 ? (k == 1 ? parts[i].first : make(Op::Pow, k, {parts[i].first}))
                          : pow(parts[i].first, k);
        if (p.is_num()) {
          c *= p.q();
        } else if (p.op() == Op::Mul) {
          out.push_back(p);
          again = true;
        } else {
          out.push_back(p);
        }
      }
      i = j;
    }
    if (again && round < 4) {
      out.push_back(num(c));
      factors = std::move(out);
      continue;
    }
    if (c == 0) return num(kZero);
    if (out.empty()) return num(c);
    if (out.size() == 1) {
      if (c == 1) return out[0];
      if (out[0].op() == Op::Add) {
        std::vector<Expr> ts;
        ts.reserve(out[0].args().size());
        for (const auto& t : out[0].args()) ts.push_back(scale(c, t));
        return add(std::move(ts));
      }
    }
    std::sort(out.begin(), out.end(), hash_less);
    if (c != 1) out.insert(out.begin(), num(c));
    return make(Op::Mul, kZero, std::move(out));
  }
}

Expr pow(const Expr& b, const mpq_class& e) {
  if (e == 0) return num(kOne);
  if (e == 1) return b;
  if (b.is_num()) {
    const mpq_class& v = b.q();
    if (v == 0) {
      if (e < 0) throw DomainError("division by zero");
      return num(kZero);
    }
    if (v == 1) return num(kOne);
    if (is_integer(e)) {
      long ee = e.get_num().get_si();
      return num(qpow(v, ee));
    }
    unsigned long d = e.get_den().get_ui();
    mpz_class rn, rd;
    if (int_root(v.get_num(), d, rn) && int_root(v.get_den(), d, rd)) {
      mpq_class r(rn, rd);
      r.canonicalize();
      return num(qpow(r, e.get_num().get_si()));
    }
    return make(Op::Pow, e, {b});
  }
  if (b.op() == Op::Pow && is_integer(e)) return pow(b.args()[0], b.q() * e);
  if (b.op() == Op::Mul && is_integer(e)) {
    std::vector<Expr> fs;
    fs.reserve(b.args().size());
    for (const auto& f : b.args()) fs.push_back(pow(f, e));
    return mul(std::move(fs));
  }
  return make(Op::Pow, e, {b});
}

Expr apply(Op f, const Expr& u) {
  if (u.is_num()) {
    const mpq_class& v = u.q();
    if (v == 0) {
      switch (f) {
        case Op::Sin: case Op::Tan: case Op::Sinh: case Op::Tanh: return num(kZero);
        case Op::Cos: case Op::Cosh: case Op::Exp: return num(kOne);
        case Op::Ln: throw DomainError("ln(0)");
        default: break;
      }
    }
    if (v == 1 && f == Op::Ln) return num(kZero);
  }
  if (f == Op::Ln && u.op() == Op::E) return num(kOne);
  if (f == Op::Ln && u.op() == Op::Exp) return u.args()[0];
  return make(f, kZero, {u});
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return add({a, b});
}
Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_zero()) return a;
  return add({a, scale(-1, b)});
}
Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return num(kZero);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return mul({a, b});
}
Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_zero()) return a;
  return mul({a, pow(b, -1)});
}
Expr operator-(const Expr& a) { return scale(-1, a); }
Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr sin(const Expr& u) { return apply(Op::Sin, u); }
Expr cos(const Expr& u) { return apply(Op::Cos, u); }
Expr tan(const Expr& u) { return apply(Op::Tan, u); }
Expr exp(const Expr& u) { return apply(Op::Exp, u); }
Expr ln(const Expr& u) { return apply(Op::Ln, u); }
Expr sqrt(const Expr& u) { return pow(u, mpq_class(1, 2)); }
Expr sinh(const Expr& u) { return apply(Op::Sinh, u); }
Expr cosh(const Expr& u) { return apply(Op::Cosh, u); }
Expr tanh(const Expr& u) { return apply(Op::Tanh, u); }

std::size_t dag_size(const Expr& e) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> st{e.get()};
  while (!st.empty()) {
    const Node* n = st.back();
    st.pop_back();
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->a) st.push_back(c.get());
  }
  return seen.size();
}

bool depends_on(const Expr& e, Var v) {
  Op target = v == Var::X ? Op::X : Op::Y;
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> st{e.get()};
  while (!st.empty()) {
    const Node* n = st.back();
    st.pop_back();
    if (n->op == target) return true;
    if (!seen.insert(n).second) continue;
    for (const auto& c : n->a) st.push_back(c.get());
  }
  return false;
}

// ---- differentiation ------------------------------------------------------------

namespace {

std::array<std::mutex, 64>& stripes() {
  static auto* s = new std::array<std::mutex, 64>;
  return *s;
}

Expr diff_raw(const Expr& e, Var v);

Expr diff_cached(const Expr& e, Var v) {
  const Node* n = e.get();
  int k = static_cast<int>(v);
  auto& mtx = stripes()[(reinterpret_cast<std::uintptr_t>(n) >> 4) % 64];
  {
    std::lock_guard<std::mutex> lock(mtx);
    if (n->d[k]) return Expr(n->d[k]);
  }
  Expr r = diff_raw(e, v);
  std::lock_guard<std::mutex> lock(mtx);
  if (!n->d[k]) n->d[k] = r.ptr();
  return Expr(n->d[k]);
}

Expr diff_raw(const Expr& e, Var v) {
  switch (e.op()) {
    case Op::Num: case Op::Pi: case Op::E: return Expr(0);
    case Op::X: return Expr(v == Var::X ? 1 : 0);
    case Op::Y: return Expr(v == Var::Y ? 1 : 0);
    case Op::Add: {
      std::vector<Expr> ts;
      for (const auto& t : e.args()) {
        Expr d = diff_cached(t, v);
        if (!d.is_zero()) ts.push_back(d);
      }
      return add(std::move(ts));
    }
    case Op::Mul: {
      const auto& f = e.args();
      std::vector<Expr> ts;
      for (std::size_t i = 0; i < f.size(); ++i) {
        Expr d = diff_cached(f[i], v);
        if (d.is_zero()) continue;
        std::vector<Expr> fs;
        fs.reserve(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) fs.push_back(j == i ? d : f[j]);
        ts.push_back(mul(std::move(fs)));
      }
      return add(std::move(ts));
    }
    case Op::Pow: {
      const Expr& b = e.args()[0];
      Expr db = diff_cached(b, v);
      if (db.is_zero()) return Expr(0);
      return mul({Expr(e.q()), pow(b, e.q() - 1), db});
    }
    default: break;
  }
  const Expr& u = e.args()[0];
  Expr du = diff_cached(u, v);
  if (du.is_zero()) return Expr(0);
  switch (e.op()) {
    case Op::Sin: return cos(u) * du;
    case Op::Cos: return -(sin(u) * du);
    case Op::Tan: return (Expr(1) + pow(e, 2)) * du;
    case Op::Exp: return e * du;
    case Op::Ln: return du / u;
    case Op::Sinh: return cosh(u) * du;
    case Op::Cosh: return sinh(u) * du;
    case Op::Tanh: return (Expr(1) - pow(e, 2)) * du;
    default: return Expr(0);
  }
}

}  // namespace

Expr diff(const Expr& e, Var v) { return diff_cached(e, v); }

// ---- printing -----------------------------------------------------------------------

namespace {

const char* fname(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sinh: return "sinh";
    case Op::Cosh: return "cosh";
    case Op::Tanh: return "tanh";
    default: return "?";
  }
}

void print(const Expr& e, std::string& s);

void print_base(const Expr& b, std::string& s) {
  bool paren = b.op() == Op::Add || b.op() == Op::Mul || b.op() == Op::Pow ||
               (b.is_num() && (b.q() < 0 || b.q().get_den() != 1));
  if (paren) s += '(';
  print(b, s);
  if (paren) s += ')';
}

void print_pow(const Expr& b, const mpq_class& ex, std::string& s) {
  print_base(b, s);
  if (ex == 1) return;
  if (ex > 0 && ex.get_den() == 1)
    s += "^" + ex.get_str();
  else
    s += "^(" + ex.get_str() + ")";
}

void print_factor(const Expr& f, std::string& s) {
  if (f.op() == Op::Add) {
    s += '(';
    print(f, s);
    s += ')';
  } else {
    print(f, s);
  }
}

// prints a product of a rational coefficient and factors
void print_product(const mpq_class& c, std::vector<Expr> fs, std::string& s) {
  std::sort(fs.begin(), fs.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  std::vector<Expr> numer, denom;
  for (const auto& f : fs) {
    if (f.op() == Op::Pow && f.q() < 0)
      denom.push_back(f);
    else
      numer.push_back(f);
  }
  mpq_class ac = abs(c);
  // a leading coefficient would be distributed over a leading sum on reparse
  bool coeff_last = ac != 1 && !numer.empty() && (numer.size() >= 2 || !denom.empty());
  bool wrap = c < 0 && !numer.empty() && numer[0].op() == Op::Add;
  if (c < 0) s += '-';
  if (wrap) s += '(';
  bool first = true;
  if (!coeff_last && (ac != 1 || numer.empty())) {
    s += ac.get_str();
    first = false;
  }
  for (const auto& f : numer) {
    if (!first) s += '*';
    first = false;
    print_factor(f, s);
  }
  for (const auto& f : denom) {
    s += '/';
    print_pow(f.args()[0], -f.q(), s);
  }
  if (coeff_last) s += "*" + ac.get_str();
  if (wrap) s += ')';
}

void print(const Expr& e, std::string& s) {
  switch (e.op()) {
    case Op::Num: s += e.q().get_str(); return;
    case Op::Pi: s += "pi"; return;
    case Op::E: s += "e"; return;
    case Op::X: s += "x"; return;
    case Op::Y: s += "y"; return;
    case Op::Pow:
      if (e.q() < 0)
        print_product(1, {e}, s);
      else
        print_pow(e.args()[0], e.q(), s);
      return;
    case Op::Mul: {
      mpq_class c = 1;
      std::vector<Expr> fs;
      for (const auto& f : e.args()) {
        if (f.is_num())
          c *= f.q();
        else
          fs.push_back(f);
      }
      print_product(c, std::move(fs), s);
      return;
    }
    case Op::Add: {
      std::vector<Expr> ts = e.args();
      std::sort(ts.begin(), ts.end(), [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
      // constant last reads more naturally
      std::stable_partition(ts.begin(), ts.end(), [](const Expr& t) { return !t.is_num(); });
      bool first = true;
      for (const auto& t : ts) {
        auto [k, r] = split_coeff(t);
        if (t.is_num()) {
          k = t.q();
        }
        mpq_class shown = k;
        if (!first) {
          s += k < 0 ? " - " : " + ";
          shown = abs(k);
        }
        first = false;
        if (t.is_num()) {
          s += shown.get_str();
        } else if (r.op() == Op::Mul) {
          std::vector<Expr> fs(r.args().begin(), r.args().end());
          print_product(shown, std::move(fs), s);
        } else {
          print_product(shown, {r}, s);
        }
      }
      return;
    }
    default:
      s += fname(e.op());
      s += '(';
      print(e.args()[0], s);
      s += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string s;
  print(e, s);
  return s;
}

std::string to_string(ZeroVerdict::Kind k) {
  switch (k) {
    case ZeroVerdict::Zero: return "Zero";
    case ZeroVerdict::NonZero: return "NonZero";
    default: return "Unknown";
  }
}

}  // namespace cubint
