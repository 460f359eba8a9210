#ifndef KFORGE_GROEBNER_HPP
#define KFORGE_GROEBNER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kforge/gcd.hpp"
#include "kforge/poly.hpp"

namespace kforge {

enum class OrderKind { lex, grlex, block };

/// Monomial order on x1..xn. lex and grlex rank x1 > x2 > ... ; a block order
/// compares the eliminated variables first (graded-lex), then the kept ones.
class MonomialOrder {
public:
  static MonomialOrder lex() { return MonomialOrder(OrderKind::lex, {}); }
  static MonomialOrder grlex() { return MonomialOrder(OrderKind::grlex, {}); }

  /// eliminated holds 1-based variable indices of an n-variable ring.
  static MonomialOrder block(std::size_t n, const std::vector<std::size_t>& eliminated) {
    std::vector<bool> flags(n, false);
    for (auto v : eliminated) {
      Poly::check_var(n, v);
      flags[v - 1] = true;
    }
    return MonomialOrder(OrderKind::block, std::move(flags));
  }

  OrderKind kind() const { return kind_; }
  const std::vector<bool>& eliminated() const { return eliminated_; }

  /// <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case OrderKind::lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
        return 0;
      case OrderKind::grlex:
        return grlex_compare(a, b);
      case OrderKind::block: {
        if (int c = block_compare(a, b, true)) return c;
        return block_compare(a, b, false);
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case OrderKind::lex: return "lex";
      case OrderKind::grlex: return "grlex";
      case OrderKind::block: return "block";
    }
    return "?";
  }

private:
  MonomialOrder(OrderKind k, std::vector<bool> e) : kind_(k), eliminated_(std::move(e)) {}

  int block_compare(const Monomial& a, const Monomial& b, bool elim) const {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (eliminated_[i] == elim) {
        da += a[i];
        db += b[i];
      }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (eliminated_[i] == elim && a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  OrderKind kind_;
  std::vector<bool> eliminated_;
};

/// Reduced Groebner basis: generators are primitive with positive leading
/// coefficient, listed by descending leading monomial.
struct GroebnerBasis {
  MonomialOrder order = MonomialOrder::grlex();
  std::size_t ambient = 0;
  std::vector<Poly> gens;
};

namespace detail {

struct Term {
  Monomial m;
  Rational c;
};

/// Terms sorted descending under a fixed order.
using OrderedPoly = std::vector<Term>;

inline OrderedPoly to_ordered(const Poly& p, const MonomialOrder& ord) {
  OrderedPoly r;
  r.reserve(p.num_terms());
  for (const auto& [m, c] : p.terms()) r.push_back({m, c});
  std::sort(r.begin(), r.end(), [&](const Term& a, const Term& b) { return ord.compare(a.m, b.m) > 0; });
  return r;
}

inline Poly to_poly(const OrderedPoly& p, std::size_t n) {
  Poly r(n);
  for (const auto& t : p) r.add_term(t.m, t.c);
  return r;
}

/// p - c * m * g, merging sorted term lists.
inline OrderedPoly sub_scaled(const OrderedPoly& p, const Rational& c, const Monomial& m, const OrderedPoly& g,
                              const MonomialOrder& ord) {
  OrderedPoly r;
  r.reserve(p.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < p.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(p[i++]);
      continue;
    }
    Monomial gm = g[j].m * m;
    if (i == p.size()) {
      r.push_back({std::move(gm), -c * g[j].c});
      ++j;
      continue;
    }
    int cmp = ord.compare(p[i].m, gm);
    if (cmp > 0) {
      r.push_back(p[i++]);
    } else if (cmp < 0) {
      r.push_back({std::move(gm), -c * g[j].c});
      ++j;
    } else {
      Rational v = p[i].c - c * g[j].c;
      if (v != 0) r.push_back({p[i].m, v});
      ++i;
      ++j;
    }
  }
  return r;
}

inline void make_primitive(OrderedPoly& p) {
  if (p.empty()) return;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& t : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den_mpz_t());
  for (const auto& t : p) {
    Integer s = t.c.get_num() * (den_lcm / t.c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), s.get_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (p.front().c < 0) scale = -scale;
  for (auto& t : p) t.c *= scale;
}

/// Full reduction of p by the listed basis elements.
inline OrderedPoly reduce(OrderedPoly p, const std::vector<const OrderedPoly*>& basis, const MonomialOrder& ord) {
  OrderedPoly rem;
  while (!p.empty()) {
    const OrderedPoly* div = nullptr;
    for (const auto* g : basis)
      if (g->front().m.divides(p.front().m)) {
        div = g;
        break;
      }
    if (!div) {
      rem.push_back(std::move(p.front()));
      p.erase(p.begin());
      continue;
    }
    Monomial m = p.front().m / div->front().m;
    Rational c = p.front().c / div->front().c;
    p = sub_scaled(p, c, m, *div, ord);
  }
  return rem;
}

inline OrderedPoly spoly(const OrderedPoly& f, const OrderedPoly& g, const MonomialOrder& ord) {
  Monomial l = lcm(f.front().m, g.front().m);
  Monomial mf = l / f.front().m, mg = l / g.front().m;
  OrderedPoly scaled_f;
  scaled_f.reserve(f.size());
  for (const auto& t : f) scaled_f.push_back({t.m * mf, t.c / f.front().c});
  return sub_scaled(scaled_f, Rational(1) / g.front().c, mg, g, ord);
}

} // namespace detail

/// Reduced Groebner basis of the ideal generated by gens.
inline GroebnerBasis buchberger(const std::vector<Poly>& gens, const MonomialOrder& order) {
  using detail::OrderedPoly;
  if (gens.empty()) throw PreconditionError("buchberger: no generators");
  const std::size_t n = gens.front().ambient();
  for (const auto& g : gens) Poly::check_same(g, gens.front());
  if (order.kind() == OrderKind::block && order.eliminated().size() != n)
    throw ArityError("buchberger: block order built for a different ring");

  std::vector<OrderedPoly> store;
  std::vector<bool> active;
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;

  auto update = [&](std::size_t h) {
    const Monomial& lh = store[h].front().m;
    std::vector<std::size_t> cands;
    for (std::size_t g = 0; g < store.size(); ++g)
      if (g != h && active[g]) cands.push_back(g);

    // Gebauer-Moeller: drop new pairs whose lcm is a proper multiple of another's.
    std::vector<std::size_t> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      const Monomial& lg = store[cands[a]].front().m;
      Monomial la = lcm(lh, lg);
      bool keep = coprime(lh, lg);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
          if (lcm(lh, store[cands[b]].front().m).divides(la)) keep = false;
        for (auto d : kept)
          if (keep && lcm(lh, store[d].front().m).divides(la)) keep = false;
      }
      if (keep) kept.push_back(cands[a]);
    }
    std::vector<Pair> next;
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && lcm(store[p.i].front().m, lh) != p.lcm &&
                  lcm(lh, store[p.j].front().m) != p.lcm;
      if (!drop) next.push_back(std::move(p));
    }
    for (auto g : kept)
      if (!coprime(lh, store[g].front().m)) next.push_back({g, h, lcm(lh, store[g].front().m)});
    pairs = std::move(next);
    for (std::size_t g = 0; g < store.size(); ++g)
      if (g != h && active[g] && lh.divides(store[g].front().m)) active[g] = false;
  };

  auto active_list = [&]() {
    std::vector<const OrderedPoly*> out;
    for (std::size_t g = 0; g < store.size(); ++g)
      if (active[g]) out.push_back(&store[g]);
    return out;
  };

  auto insert = [&](OrderedPoly p) {
    p = detail::reduce(std::move(p), active_list(), order);
    if (p.empty()) return;
    detail::make_primitive(p);
    store.push_back(std::move(p));
    active.push_back(true);
    update(store.size() - 1);
  };

  bool any = false;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    any = true;
    insert(detail::to_ordered(g, order));
  }
  if (!any) throw PreconditionError("buchberger: all generators are zero");

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      auto da = a.lcm.total_degree(), db = b.lcm.total_degree();
      if (da != db) return da < db;
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });
    Pair p = *best;
    pairs.erase(best);
    insert(detail::spoly(store[p.i], store[p.j], order));
  }

  // interreduce the minimal basis
  std::vector<OrderedPoly> minimal;
  for (std::size_t g = 0; g < store.size(); ++g)
    if (active[g]) minimal.push_back(store[g]);
  std::vector<OrderedPoly> reduced;
  for (std::size_t a = 0; a < minimal.size(); ++a) {
    std::vector<const OrderedPoly*> others;
    for (std::size_t b = 0; b < minimal.size(); ++b)
      if (b != a) others.push_back(&minimal[b]);
    OrderedPoly head{minimal[a].front()};
    OrderedPoly tail(minimal[a].begin() + 1, minimal[a].end());
    OrderedPoly r = detail::reduce(std::move(tail), others, order);
    head.insert(head.end(), r.begin(), r.end());
    detail::make_primitive(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const OrderedPoly& a, const OrderedPoly& b) {
    return order.compare(a.front().m, b.front().m) > 0;
  });
  GroebnerBasis gb{order, n, {}};
  for (const auto& r : reduced) gb.gens.push_back(detail::to_poly(r, n));
  return gb;
}

/// The unique remainder of p modulo the ideal of gb.
inline Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  if (gb.gens.empty()) return p;
  Poly::check_same(p, gb.gens.front());
  std::vector<detail::OrderedPoly> basis;
  for (const auto& g : gb.gens) basis.push_back(detail::to_ordered(g, gb.order));
  std::vector<const detail::OrderedPoly*> ptrs;
  for (const auto& b : basis) ptrs.push_back(&b);
  return detail::to_poly(detail::reduce(detail::to_ordered(p, gb.order), ptrs, gb.order), p.ambient());
}

inline bool ideal_contains(const GroebnerBasis& gb, const Poly& p) { return normal_form(p, gb).is_zero(); }

/// Re-indexes a polynomial free of the dropped variables into the ring on `keep`.
inline Poly restrict_to(const Poly& p, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> pos(p.ambient() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = i + 1;
  Poly r(keep.size());
  for (const auto& [m, c] : p.terms()) {
    Monomial mm(keep.size());
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 0) continue;
      if (pos[j + 1] == 0) throw PreconditionError("restrict_to: polynomial involves a dropped variable");
      mm[pos[j + 1] - 1] = m[j];
    }
    r.add_term(mm, c);
  }
  return r;
}

/// Contraction of the ideal to the subring on `keep` (1-based indices, sorted
/// on output). The result lives in a ring whose i-th variable is keep[i].
inline GroebnerBasis elimination_ideal(const std::vector<Poly>& gens, std::vector<std::size_t> keep) {
  if (gens.empty()) throw PreconditionError("elimination_ideal: no generators");
  const std::size_t n = gens.front().ambient();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || keep.size() >= n)
    throw PreconditionError("elimination_ideal: keep must be a proper nonempty subset");
  std::vector<bool> kept(n + 1, false);
  for (auto v : keep) {
    Poly::check_var(n, v);
    kept[v] = true;
  }
  std::vector<std::size_t> elim;
  for (std::size_t v = 1; v <= n; ++v)
    if (!kept[v]) elim.push_back(v);
  GroebnerBasis full = buchberger(gens, MonomialOrder::block(n, elim));
  GroebnerBasis out{MonomialOrder::grlex(), keep.size(), {}};
  for (const auto& g : full.gens) {
    bool free = true;
    for (auto v : elim) free = free && !g.involves(v);
    if (free) out.gens.push_back(restrict_to(g, keep));
  }
  return out;
}

/// Writes target as a polynomial in f_1..f_m when it lies in Q[f_1..f_m]:
/// the returned e satisfies substitute(e, f) == target. nullopt otherwise.
inline std::optional<Poly> subalgebra_membership(const Poly& target, const std::vector<Poly>& f) {
  const std::size_t n = target.ambient();
  const std::size_t m = f.size();
  if (m == 0) {
    if (target.is_constant()) return Poly::constant(0, target.constant_term());
    return std::nullopt;
  }
  for (const auto& fi : f) Poly::check_same(fi, target);
  const std::size_t total = n + m;
  std::vector<Poly> gens;
  for (std::size_t i = 0; i < m; ++i) gens.push_back(Poly::variable(total, n + i + 1) - extend(f[i], total));
  std::vector<std::size_t> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = i + 1;
  GroebnerBasis gb = buchberger(gens, MonomialOrder::block(total, xs));
  Poly nf = normal_form(extend(target, total), gb);
  for (auto v : xs)
    if (nf.involves(v)) return std::nullopt;
  std::vector<std::size_t> ys(m);
  for (std::size_t i = 0; i < m; ++i) ys[i] = n + i + 1;
  return restrict_to(nf, ys);
}

} // namespace kforge

#endif // KFORGE_GROEBNER_HPP
