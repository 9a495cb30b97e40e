#include "cotorsion/repcore.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <random>
#include <sstream>

#include "cotorsion/errors.hpp"

namespace ctl {

namespace {

int parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  int out = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ArgumentError("not an integer: '" + std::string(s) + "'");
  return out;
}

}  // namespace

std::string Interval::str() const { return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]"; }

std::string Interval::stacked() const {
  std::string out;
  for (int v = hi; v >= lo; --v) {
    if (v != hi) out += '/';
    out += std::to_string(v);
  }
  return out;
}

Interval Interval::parse(const std::string& text) {
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw ArgumentError("empty interval string");
  Interval iv;
  if (s.front() == '[') {
    if (s.back() != ']') throw ArgumentError("malformed interval '" + text + "'");
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) throw ArgumentError("malformed interval '" + text + "'");
    iv.lo = parse_int(s.substr(1, comma - 1));
    iv.hi = parse_int(s.substr(comma + 1, s.size() - comma - 2));
  } else {
    std::vector<int> parts;
    size_t start = 0;
    while (true) {
      const auto slash = s.find('/', start);
      parts.push_back(parse_int(s.substr(start, slash == std::string_view::npos ? s.npos : slash - start)));
      if (slash == std::string_view::npos) break;
      start = slash + 1;
    }
    for (size_t k = 1; k < parts.size(); ++k)
      if (parts[k] != parts[k - 1] - 1)
        throw ArgumentError("stacked interval must descend by one: '" + text + "'");
    iv.hi = parts.front();
    iv.lo = parts.back();
  }
  if (iv.lo < 1 || iv.lo > iv.hi) throw ArgumentError("invalid interval '" + text + "'");
  return iv;
}

Presentation::Presentation(int n, std::vector<Interval> relations) : n_(n) {
  if (n < 1) throw ArgumentError("quiver needs at least one vertex");
  for (const Interval& r : relations) {
    if (r.lo < 1 || r.hi > n || r.lo >= r.hi)
      throw ArgumentError("relation " + r.str() + " out of range for n=" + std::to_string(n));
    if (r.hi - r.lo < 2) throw ArgumentError("relation " + r.str() + " has path length < 2");
  }
  std::sort(relations.begin(), relations.end());
  relations.erase(std::unique(relations.begin(), relations.end()), relations.end());
  for (const Interval& r : relations) {
    const bool implied = std::any_of(relations.begin(), relations.end(),
                                     [&](const Interval& o) { return o != r && r.contains(o); });
    if (!implied) relations_.push_back(r);
  }
}

bool Presentation::admissible(const Interval& iv) const noexcept {
  if (iv.lo < 1 || iv.hi > n_ || iv.lo > iv.hi) return false;
  return std::none_of(relations_.begin(), relations_.end(), [&](const Interval& r) { return iv.contains(r); });
}

Module::Module(Presentation pres, Field field, std::vector<int> dims, std::vector<Matrix> arrows)
    : pres_(std::move(pres)), field_(std::move(field)), dims_(std::move(dims)), arrows_(std::move(arrows)) {
  const int n = pres_.n();
  if (static_cast<int>(dims_.size()) != n) throw ArgumentError("module needs one dimension per vertex");
  if (static_cast<int>(arrows_.size()) != n - 1) throw ArgumentError("module needs one matrix per arrow");
  for (int d : dims_)
    if (d < 0) throw ArgumentError("negative dimension");
  for (int v = 1; v < n; ++v) {
    const Matrix& a = arrows_[v - 1];
    if (a.rows() != dims_[v - 1] || a.cols() != dims_[v])
      throw ArgumentError("arrow " + std::to_string(v + 1) + "->" + std::to_string(v) + " has wrong shape");
    for (int r = 0; r < a.rows(); ++r)
      for (int c = 0; c < a.cols(); ++c)
        if (a(r, c) < 0 || a(r, c) >= field_.p()) throw ArgumentError("matrix entry outside F_p");
  }
  for (const Interval& rel : pres_.relations())
    if (!path(rel.hi, rel.lo).is_zero())
      throw ArgumentError("module violates relation " + rel.str());
}

Module Module::zero(const Presentation& pres, const Field& field) {
  std::vector<Matrix> arrows;
  for (int v = 1; v < pres.n(); ++v) arrows.emplace_back(0, 0);
  return Module(pres, field, std::vector<int>(pres.n(), 0), std::move(arrows));
}

Module Module::interval(const Presentation& pres, const Field& field, const Interval& iv) {
  return direct_sum_of_intervals(pres, field, {iv});
}

int Module::total_dim() const noexcept {
  int t = 0;
  for (int d : dims_) t += d;
  return t;
}

Matrix Module::path(int from, int to) const {
  if (from < to) throw ArgumentError("paths run from higher to lower vertices");
  Matrix m = Matrix::identity(dim(from));
  for (int v = from - 1; v >= to; --v) m = multiply(field_, arrow(v), m);
  return m;
}

Module direct_sum_of_intervals(const Presentation& pres, const Field& field,
                               const std::vector<Interval>& summands) {
  const int n = pres.n();
  std::vector<int> dims(n, 0);
  // position of summand s at vertex v, or -1
  std::vector<std::vector<int>> slot(summands.size(), std::vector<int>(n + 1, -1));
  for (size_t s = 0; s < summands.size(); ++s) {
    if (!pres.admissible(summands[s]))
      throw ArgumentError("interval " + summands[s].str() + " is not a module over this algebra");
    for (int v = summands[s].lo; v <= summands[s].hi; ++v) slot[s][v] = dims[v - 1]++;
  }
  std::vector<Matrix> arrows;
  for (int v = 1; v < n; ++v) {
    Matrix a(dims[v - 1], dims[v]);
    for (size_t s = 0; s < summands.size(); ++s)
      if (slot[s][v] >= 0 && slot[s][v + 1] >= 0) a(slot[s][v], slot[s][v + 1]) = 1;
    arrows.push_back(std::move(a));
  }
  return Module(pres, field, std::move(dims), std::move(arrows));
}

Module direct_sum(const Module& a, const Module& b) {
  if (!a.same_category(b)) throw ArgumentError("direct sum across different categories");
  std::vector<int> dims(a.n());
  for (int v = 1; v <= a.n(); ++v) dims[v - 1] = a.dim(v) + b.dim(v);
  std::vector<Matrix> arrows;
  for (int v = 1; v < a.n(); ++v) arrows.push_back(block_diag(a.arrow(v), b.arrow(v)));
  return Module(a.presentation(), a.field(), std::move(dims), std::move(arrows));
}

Morphism::Morphism(Module source, Module target, std::vector<Matrix> components)
    : source_(std::move(source)), target_(std::move(target)), comps_(std::move(components)) {
  if (!source_.same_category(target_)) throw ArgumentError("morphism endpoints live in different categories");
  const int n = source_.n();
  if (static_cast<int>(comps_.size()) != n) throw ArgumentError("morphism needs one component per vertex");
  const Field& F = source_.field();
  for (int v = 1; v <= n; ++v) {
    const Matrix& c = comps_[v - 1];
    if (c.rows() != target_.dim(v) || c.cols() != source_.dim(v))
      throw ArgumentError("morphism component at vertex " + std::to_string(v) + " has wrong shape");
  }
  for (int v = 1; v < n; ++v) {
    const Matrix lhs = multiply(F, target_.arrow(v), comps_[v]);
    const Matrix rhs = multiply(F, comps_[v - 1], source_.arrow(v));
    if (!(lhs == rhs))
      throw ArgumentError("naturality fails on arrow " + std::to_string(v + 1) + "->" + std::to_string(v));
  }
}

Morphism Morphism::identity(const Module& m) {
  std::vector<Matrix> comps;
  for (int v = 1; v <= m.n(); ++v) comps.push_back(Matrix::identity(m.dim(v)));
  return Morphism(m, m, std::move(comps));
}

Morphism Morphism::zero(const Module& source, const Module& target) {
  std::vector<Matrix> comps;
  for (int v = 1; v <= source.n(); ++v) comps.emplace_back(target.dim(v), source.dim(v));
  return Morphism(source, target, std::move(comps));
}

bool Morphism::is_zero() const noexcept {
  return std::all_of(comps_.begin(), comps_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool Morphism::is_injective() const {
  const Field& F = source_.field();
  for (const Matrix& c : comps_)
    if (rank(F, c) != c.cols()) return false;
  return true;
}

bool Morphism::is_surjective() const {
  const Field& F = source_.field();
  for (const Matrix& c : comps_)
    if (rank(F, c) != c.rows()) return false;
  return true;
}

bool Morphism::is_iso() const { return is_injective() && is_surjective(); }

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!(f.target() == g.source())) throw ArgumentError("compose: endpoint mismatch");
  const Field& F = f.source().field();
  std::vector<Matrix> comps;
  for (int v = 1; v <= f.source().n(); ++v) comps.push_back(multiply(F, g.at(v), f.at(v)));
  return Morphism(f.source(), g.target(), std::move(comps));
}

Morphism add(const Morphism& f, const Morphism& g) {
  if (!(f.source() == g.source()) || !(f.target() == g.target())) throw ArgumentError("add: endpoint mismatch");
  const Field& F = f.source().field();
  std::vector<Matrix> comps;
  for (int v = 1; v <= f.source().n(); ++v) comps.push_back(ctl::add(F, f.at(v), g.at(v)));
  return Morphism(f.source(), f.target(), std::move(comps));
}

Morphism scale(int s, const Morphism& f) {
  const Field& F = f.source().field();
  std::vector<Matrix> comps;
  for (int v = 1; v <= f.source().n(); ++v) comps.push_back(ctl::scale(F, s, f.at(v)));
  return Morphism(f.source(), f.target(), std::move(comps));
}

Morphism inverse(const Morphism& f) {
  const Field& F = f.source().field();
  std::vector<Matrix> comps;
  for (int v = 1; v <= f.source().n(); ++v) {
    auto inv = ctl::inverse(F, f.at(v));
    if (!inv) throw ArgumentError("inverse: morphism is not an isomorphism");
    comps.push_back(std::move(*inv));
  }
  return Morphism(f.target(), f.source(), std::move(comps));
}

Morphism descend_along_epi(const Morphism& q, const Morphism& g) {
  if (!(q.source() == g.source())) throw ArgumentError("descend_along_epi: sources differ");
  const Field& F = q.source().field();
  std::vector<Matrix> comps;
  for (int v = 1; v <= q.source().n(); ++v) {
    auto s = solve(F, q.at(v), Matrix::identity(q.target().dim(v)));
    if (!s) throw ArgumentError("descend_along_epi: map is not surjective");
    comps.push_back(multiply(F, g.at(v), *s));
  }
  Morphism h(q.target(), g.target(), std::move(comps));
  if (!(compose(h, q) == g)) throw ArgumentError("descend_along_epi: map does not vanish on the kernel");
  return h;
}

Morphism linear_combination(const std::vector<Morphism>& basis, const std::vector<int>& coeffs,
                            const Module& source, const Module& target) {
  Morphism out = Morphism::zero(source, target);
  for (size_t i = 0; i < basis.size(); ++i)
    if (coeffs.at(i)) out = add(out, scale(coeffs[i], basis[i]));
  return out;
}

std::vector<Morphism> hom_space(const Module& m, const Module& n) {
  if (!m.same_category(n)) throw ArgumentError("hom_space: modules over different presentations or fields");
  const Field& F = m.field();
  const int q = m.n();
  std::vector<int> offset(q + 1, 0);
  for (int v = 1; v <= q; ++v) offset[v] = offset[v - 1] + n.dim(v) * m.dim(v);
  const int unknowns = offset[q];
  auto var = [&](int v, int i, int k) { return offset[v - 1] + i * m.dim(v) + k; };

  int equations = 0;
  for (int v = 1; v < q; ++v) equations += n.dim(v) * m.dim(v + 1);
  Matrix sys(equations, unknowns);
  int row = 0;
  for (int v = 1; v < q; ++v) {
    const Matrix& na = n.arrow(v);  // n_v x n_{v+1}
    const Matrix& ma = m.arrow(v);  // m_v x m_{v+1}
    for (int i = 0; i < n.dim(v); ++i)
      for (int j = 0; j < m.dim(v + 1); ++j, ++row) {
        for (int k = 0; k < n.dim(v + 1); ++k)
          if (na(i, k)) sys(row, var(v + 1, k, j)) = F.add(sys(row, var(v + 1, k, j)), na(i, k));
        for (int k = 0; k < m.dim(v); ++k)
          if (ma(k, j)) sys(row, var(v, i, k)) = F.sub(sys(row, var(v, i, k)), ma(k, j));
      }
  }
  const Matrix basis = nullspace(F, sys);
  std::vector<Morphism> out;
  for (int b = 0; b < basis.cols(); ++b) {
    std::vector<Matrix> comps;
    for (int v = 1; v <= q; ++v) {
      Matrix c(n.dim(v), m.dim(v));
      for (int i = 0; i < n.dim(v); ++i)
        for (int k = 0; k < m.dim(v); ++k) c(i, k) = basis(var(v, i, k), b);
      comps.push_back(std::move(c));
    }
    out.emplace_back(m, n, std::move(comps));
  }
  return out;
}

namespace {

// Submodule of `ambient` spanned by per-vertex column bases (assumed closed
// under the arrows).
SubObject submodule_from_bases(const Module& ambient, const std::vector<Matrix>& bases) {
  const Field& F = ambient.field();
  const int q = ambient.n();
  std::vector<int> dims(q);
  for (int v = 1; v <= q; ++v) dims[v - 1] = bases[v - 1].cols();
  std::vector<Matrix> arrows;
  for (int v = 1; v < q; ++v) {
    const Matrix moved = multiply(F, ambient.arrow(v), bases[v]);
    auto x = solve(F, bases[v - 1], moved);
    if (!x) throw InternalConsistencyError("subspace family is not closed under arrow " + std::to_string(v + 1));
    arrows.push_back(std::move(*x));
  }
  Module sub(ambient.presentation(), F, std::move(dims), std::move(arrows));
  Morphism incl(sub, ambient, bases);
  return {std::move(sub), std::move(incl)};
}

}  // namespace

SubObject kernel(const Morphism& f) {
  const Field& F = f.source().field();
  std::vector<Matrix> bases;
  for (int v = 1; v <= f.source().n(); ++v) {
    Matrix k = nullspace(F, f.at(v));
    if (k.cols() == 0) k = Matrix(f.source().dim(v), 0);
    bases.push_back(std::move(k));
  }
  return submodule_from_bases(f.source(), bases);
}

SubObject image(const Morphism& f) {
  const Field& F = f.source().field();
  std::vector<Matrix> bases;
  for (int v = 1; v <= f.source().n(); ++v) {
    Matrix im = column_space(F, f.at(v));
    if (im.cols() == 0) im = Matrix(f.target().dim(v), 0);
    bases.push_back(std::move(im));
  }
  return submodule_from_bases(f.target(), bases);
}

QuotientObject cokernel(const Morphism& f) {
  const Module& tgt = f.target();
  const Field& F = tgt.field();
  const int q = tgt.n();
  std::vector<Matrix> proj(q), section(q);
  std::vector<int> dims(q);
  for (int v = 1; v <= q; ++v) {
    const int d = tgt.dim(v);
    Matrix im = column_space(F, f.at(v));
    if (im.cols() == 0) im = Matrix(d, 0);
    Matrix comp = complement_columns(F, im, d);
    if (comp.cols() == 0) comp = Matrix(d, 0);
    const Matrix full = hstack(im, comp);
    auto inv = inverse(F, full);
    if (!inv) throw InternalConsistencyError("cokernel: basis completion failed");
    Matrix qv(comp.cols(), d);
    for (int r = 0; r < comp.cols(); ++r)
      for (int c = 0; c < d; ++c) qv(r, c) = (*inv)(im.cols() + r, c);
    dims[v - 1] = comp.cols();
    proj[v - 1] = std::move(qv);
    section[v - 1] = std::move(comp);
  }
  std::vector<Matrix> arrows;
  for (int v = 1; v < q; ++v)
    arrows.push_back(multiply(F, proj[v - 1], multiply(F, tgt.arrow(v), section[v])));
  Module quot(tgt.presentation(), F, std::move(dims), std::move(arrows));
  Morphism p(tgt, quot, std::move(proj));
  return {std::move(quot), std::move(p)};
}

std::string validate_ses(const SES& s) {
  if (!(s.i.target() == s.p.source())) return "middle terms differ";
  if (!s.i.is_injective()) return "first map is not injective";
  if (!s.p.is_surjective()) return "second map is not surjective";
  if (!compose(s.p, s.i).is_zero()) return "composite is not zero";
  const Module& a = s.i.source();
  const Module& b = s.i.target();
  const Module& c = s.p.target();
  for (int v = 1; v <= b.n(); ++v)
    if (b.dim(v) != a.dim(v) + c.dim(v))
      return "image differs from kernel at vertex " + std::to_string(v);
  return {};
}

bool for_each_submodule(const Module& m, int dim_cap, const std::function<bool(const SubObject&)>& visit) {
  if (m.total_dim() > dim_cap) throw EnumerationRefused("submodule enumeration refused", dim_cap);
  const Field& F = m.field();
  const int q = m.n();
  std::vector<Matrix> chosen(q);

  std::function<bool(int)> descend = [&](int v) -> bool {
    if (v == 0) return visit(submodule_from_bases(m, chosen));
    const int d = m.dim(v);
    Matrix required(d, 0);
    if (v < q && chosen[v].cols() > 0) {
      required = column_space(F, multiply(F, m.arrow(v), chosen[v]));
      if (required.cols() == 0) required = Matrix(d, 0);
    }
    Matrix comp = complement_columns(F, required, d);
    if (comp.cols() == 0) comp = Matrix(d, 0);
    return for_each_subspace(F, comp.cols(), [&](const Matrix& s) {
      Matrix extra = s.cols() ? multiply(F, comp, s) : Matrix(d, 0);
      chosen[v - 1] = hstack(required, extra);
      return descend(v - 1);
    });
  };
  return descend(q);
}

std::vector<SubObject> submodules(const Module& m, int dim_cap) {
  std::vector<SubObject> out;
  for_each_submodule(m, dim_cap, [&](const SubObject& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

namespace {

Summand interval_summand(const Morphism& incl) {
  const Module& piece = incl.source();
  int lo = 0, hi = 0;
  for (int v = 1; v <= piece.n(); ++v)
    if (piece.dim(v) > 0) {
      if (!lo) lo = v;
      hi = v;
    }
  if (!lo) throw InternalConsistencyError("indecomposable piece is zero");
  const Interval iv{lo, hi};
  const Field& F = piece.field();
  std::vector<Matrix> comps;
  Matrix gen(1, 1);
  gen(0, 0) = 1;
  for (int v = 1; v <= piece.n(); ++v) {
    if (!iv.contains(v)) {
      comps.emplace_back(0, 0);
      continue;
    }
    if (piece.dim(v) != 1) throw InternalConsistencyError("indecomposable piece is not an interval module");
    Matrix img = multiply(F, piece.path(hi, v), gen);
    if (img.is_zero()) throw InternalConsistencyError("indecomposable piece is not an interval module");
    comps.push_back(std::move(img));
  }
  Module canon = Module::interval(piece.presentation(), F, iv);
  Morphism emb(canon, piece, std::move(comps));
  return {iv, compose(incl, emb)};
}

void serial_pieces(const Morphism& incl, std::vector<Summand>& out) {
  const Module& m = incl.source();
  if (m.is_zero()) return;
  const Field& F = m.field();
  int top = 0;
  for (int v = 1; v <= m.n(); ++v)
    if (m.dim(v) > 0) top = v;

  // Element of the top space that survives furthest down.
  int bottom = top, column = 0;
  for (int a = 1; a <= top; ++a) {
    const Matrix p = m.path(top, a);
    int found = -1;
    for (int c = 0; c < p.cols() && found < 0; ++c)
      for (int r = 0; r < p.rows(); ++r)
        if (p(r, c)) {
          found = c;
          break;
        }
    if (found >= 0) {
      bottom = a;
      column = found;
      break;
    }
  }
  const Interval iv{bottom, top};
  Matrix x(m.dim(top), 1);
  x(column, 0) = 1;

  const Matrix y = multiply(F, m.path(top, bottom), x);
  int k = 0;
  while (y(k, 0) == 0) ++k;
  Matrix phi_bottom(1, m.dim(bottom));
  phi_bottom(0, k) = F.inv(y(k, 0));

  Module canon = Module::interval(m.presentation(), F, iv);
  std::vector<Matrix> emb, ret;
  for (int v = 1; v <= m.n(); ++v) {
    if (iv.contains(v)) {
      emb.push_back(multiply(F, m.path(top, v), x));
      ret.push_back(multiply(F, phi_bottom, m.path(v, bottom)));
    } else {
      emb.emplace_back(m.dim(v), 0);
      ret.emplace_back(0, m.dim(v));
    }
  }
  Morphism embedding(canon, m, std::move(emb));
  Morphism retraction(m, canon, std::move(ret));
  out.push_back({iv, compose(incl, embedding)});

  SubObject rest = kernel(retraction);
  serial_pieces(compose(incl, rest.inclusion), out);
}

Morphism power(const Morphism& f, int k) {
  Morphism out = Morphism::identity(f.source());
  for (int i = 0; i < k; ++i) out = compose(f, out);
  return out;
}

void generic_pieces(const Morphism& incl, const DecomposeOptions& opts, std::mt19937_64& rng,
                    std::vector<Summand>& out) {
  const Module& m = incl.source();
  if (m.is_zero()) return;
  const std::vector<Morphism> ends = hom_space(m, m);
  if (ends.size() == 1) {
    out.push_back(interval_summand(incl));
    return;
  }
  const int stable = m.total_dim();
  const Field& F = m.field();

  std::optional<Morphism> splitter;
  auto try_fitting = [&](const Morphism& phi) {
    Morphism psi = power(phi, stable);
    if (!psi.is_zero() && !psi.is_iso()) splitter = std::move(psi);
    return splitter.has_value();
  };
  for (const Morphism& e : ends)
    if (try_fitting(e)) break;
  for (int attempt = 0; !splitter && attempt < opts.fitting_attempts; ++attempt) {
    std::vector<int> coeffs(ends.size());
    for (int& c : coeffs) c = static_cast<int>(rng() % static_cast<std::uint64_t>(F.p()));
    try_fitting(linear_combination(ends, coeffs, m, m));
  }
  if (!splitter) {
    if (static_cast<int>(ends.size()) > opts.exhaustion_cap)
      throw DecompositionInconclusive("decomposition inconclusive: dim End = " + std::to_string(ends.size()) +
                                      " exceeds exhaustion cap " + std::to_string(opts.exhaustion_cap));
    const Morphism id = Morphism::identity(m);
    std::vector<int> coeffs(ends.size(), 0);
    while (true) {
      size_t k = 0;
      while (k < coeffs.size() && ++coeffs[k] == F.p()) coeffs[k++] = 0;
      if (k == coeffs.size()) break;
      Morphism e = linear_combination(ends, coeffs, m, m);
      if (!(e == id) && compose(e, e) == e) {
        splitter = std::move(e);
        break;
      }
    }
  }
  if (!splitter) {
    // No nontrivial idempotent: End(M) is local.
    out.push_back(interval_summand(incl));
    return;
  }
  SubObject im = image(*splitter);
  SubObject ker = kernel(*splitter);
  generic_pieces(compose(incl, im.inclusion), opts, rng, out);
  generic_pieces(compose(incl, ker.inclusion), opts, rng, out);
}

}  // namespace

std::vector<Summand> decompose(const Module& m, const DecomposeOptions& opts) {
  std::vector<Summand> out;
  const Morphism id = Morphism::identity(m);
  if (opts.method == DecomposeOptions::Method::generic) {
    std::mt19937_64 rng(opts.seed);
    generic_pieces(id, opts, rng, out);
  } else {
    serial_pieces(id, out);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Summand& a, const Summand& b) { return a.interval < b.interval; });
  return out;
}

Morphism assemble_iso(const Module& m, const std::vector<Summand>& pieces) {
  std::vector<Interval> ivs;
  for (const Summand& s : pieces) ivs.push_back(s.interval);
  Module src = direct_sum_of_intervals(m.presentation(), m.field(), ivs);
  std::vector<Matrix> comps;
  for (int v = 1; v <= m.n(); ++v) {
    Matrix c(m.dim(v), 0);
    for (const Summand& s : pieces)
      if (s.interval.contains(v)) c = hstack(c, s.embedding.at(v));
    comps.push_back(std::move(c));
  }
  return Morphism(std::move(src), m, std::move(comps));
}

}  // namespace ctl
