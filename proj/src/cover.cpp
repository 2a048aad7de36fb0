#include "lpnq/cover.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "parallel.hpp"

namespace lpnq {

  namespace {
    Vector extend(Vector v, size_t n) {
      v.resize(n, 0);
      return v;
    }

    PcWord with_tail(PcWord w, size_t t) {
      w.emplace_back(t, 1);
      return w;
    }

    // Image in Z^rank of the elements of F represented by the generators of
    // the quotient.
    std::vector<Vector> generator_abelian_images(NilpotentQuotient const& q,
                                                 size_t rank) {
      std::vector<Vector> out;
      for (auto const& d : q.definitions) {
        Vector v(rank, 0);
        if (d.image) {
          v[d.x] = 1;
        }
        out.push_back(std::move(v));
      }
      return out;
    }

    Vector abelian_image(std::vector<Vector> const& gens,
                         Vector const&              v,
                         size_t                     rank) {
      Vector r(rank, 0);
      for (size_t g = 0; g < gens.size(); ++g) {
        if (v[g] != 0) {
          for (size_t x = 0; x < rank; ++x) {
            r[x] += v[g] * gens[g][x];
          }
        }
      }
      return r;
    }
  }  // namespace

  NilpotentQuotient trivial_quotient(size_t rank) {
    NilpotentQuotient q;
    q.map.images.assign(rank, Vector());
    return q;
  }

  Vector Cover::tail_part(Vector const& v) const {
    size_t const n = first_tail();
    for (size_t g = 0; g < n; ++g) {
      if (v[g] != 0) {
        throw std::logic_error("element does not lie in the central "
                               "subgroup of the cover");
      }
    }
    return Vector(v.begin() + n, v.end());
  }

  Vector Cover::lift_relator(Word const& w) const {
    return tail_part(lift(collector, w));
  }

  ////////////////////////////////////////////////////////////////////////
  // build_cover
  ////////////////////////////////////////////////////////////////////////

  Cover build_cover(NilpotentQuotient q, unsigned jobs) {
    auto const&  p    = q.presentation;
    size_t const n    = p.size();
    size_t const c    = q.nilpotency_class;
    size_t const rank = q.map.images.size();

    std::vector<std::optional<size_t>> defined_by(rank);
    std::vector<std::vector<bool>>     is_def(n, std::vector<bool>(n, false));
    for (size_t g = 0; g < n; ++g) {
      auto const& d = q.definitions[g];
      if (d.image) {
        defined_by[d.x] = g;
      } else {
        is_def[d.j][d.i] = true;
      }
    }

    std::vector<Tail> tails;
    for (size_t x = 0; x < rank; ++x) {
      if (!defined_by[x]) {
        tails.push_back({Tail::Kind::image, x, 0, 0});
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (p.finite(i)) {
        tails.push_back({Tail::Kind::power, 0, 0, i});
      }
    }
    for (size_t j = 0; j < n; ++j) {
      for (size_t i = 0; i < j; ++i) {
        if (p.weight(i) + p.weight(j) <= c + 1 && !is_def[j][i]) {
          tails.push_back({Tail::Kind::commutator, 0, j, i});
        } else if (p.weight(i) + p.weight(j) > c + 1
                   && !p.commutator(j, i).empty()) {
          throw std::logic_error("commutator of too large weight in a "
                                 "presentation of class "
                                 + std::to_string(c));
        }
      }
    }
    size_t const m = tails.size();
    size_t const N = n + m;

    NilpotentPresentation ps;
    for (size_t g = 0; g < n; ++g) {
      ps.add_generator(p.weight(g), p.relative_order(g));
    }
    for (size_t k = 0; k < m; ++k) {
      ps.add_central_generator(c + 1);
    }
    for (size_t g = 0; g < n; ++g) {
      if (p.finite(g)) {
        ps.set_power(g, p.power(g));
      }
      for (size_t i = 0; i < g; ++i) {
        ps.set_commutator(g, i, p.commutator(g, i));
      }
    }
    for (size_t k = 0; k < m; ++k) {
      auto const& t = tails[k];
      if (t.kind == Tail::Kind::power) {
        ps.set_power(t.i, with_tail(p.power(t.i), n + k));
      } else if (t.kind == Tail::Kind::commutator) {
        ps.set_commutator(t.j, t.i, with_tail(p.commutator(t.j, t.i), n + k));
      }
    }

    Cover cv;
    cv.collector = Collector(std::move(ps));
    cv.tails     = tails;
    cv.relations = Lattice(m);

    Collector const& col = cv.collector;
    cv.lift.images.resize(rank);
    for (size_t x = 0; x < rank; ++x) {
      cv.lift.images[x] = extend(q.map.images[x], N);
    }
    for (size_t k = 0; k < m; ++k) {
      if (tails[k].kind == Tail::Kind::image) {
        cv.lift.images[tails[k].x][n + k] += 1;
      }
    }

    // Consistency checks; each yields two normal forms of the same element.
    struct Check {
      int    kind;
      size_t k, j, i;
    };
    std::vector<Check> checks;
    for (size_t k = 0; k < n; ++k) {
      for (size_t j = 0; j < k; ++j) {
        for (size_t i = 0; i < j; ++i) {
          if (p.weight(i) + p.weight(j) + p.weight(k) <= c + 1) {
            checks.push_back({1, k, j, i});
          }
        }
      }
    }
    for (size_t j = 0; j < n; ++j) {
      if (p.finite(j)) {
        checks.push_back({4, 0, 0, j});
      }
      for (size_t i = 0; i < j; ++i) {
        if (p.finite(j)) {
          checks.push_back({2, 0, j, i});
        }
        if (p.finite(i)) {
          checks.push_back({3, 0, j, i});
        } else {
          checks.push_back({5, 0, j, i});
        }
        if (!p.finite(j)) {
          checks.push_back({6, 0, j, i});
          if (!p.finite(i)) {
            checks.push_back({7, 0, j, i});
          }
        }
      }
    }

    auto unit = [&](size_t g, Integer e = 1) {
      Vector v(N, 0);
      v[g] = std::move(e);
      return v;
    };
    auto power_of = [&](size_t g) {
      return to_vector(col.presentation().power(g), N);
    };
    std::vector<Vector> diffs(checks.size());
    detail::parallel_for(checks.size(), jobs, [&](size_t t) {
      auto const& ch = checks[t];
      Vector      lhs, rhs;
      switch (ch.kind) {
        case 1: {  // (a_k a_j) a_i = a_k (a_j a_i)
          lhs = unit(ch.k);
          col.mul_gen(lhs, ch.j, 1);
          col.mul_gen(lhs, ch.i, 1);
          Vector ji = unit(ch.j);
          col.mul_gen(ji, ch.i, 1);
          rhs = unit(ch.k);
          col.mul(rhs, ji);
          break;
        }
        case 2: {  // (a_j^o) a_i = a_j^{o-1} (a_j a_i)
          lhs = power_of(ch.j);
          col.mul_gen(lhs, ch.i, 1);
          Vector ji = unit(ch.j);
          col.mul_gen(ji, ch.i, 1);
          rhs = unit(ch.j, p.relative_order(ch.j) - 1);
          col.mul(rhs, ji);
          break;
        }
        case 3: {  // (a_j a_i^{o-1}) a_i = a_j (a_i^o)
          lhs = unit(ch.j);
          col.mul_gen(lhs, ch.i, p.relative_order(ch.i) - 1);
          col.mul_gen(lhs, ch.i, 1);
          rhs = unit(ch.j);
          col.mul(rhs, power_of(ch.i));
          break;
        }
        case 4: {  // (a_i^o) a_i = a_i (a_i^o)
          lhs = power_of(ch.i);
          col.mul_gen(lhs, ch.i, 1);
          rhs = unit(ch.i);
          col.mul(rhs, power_of(ch.i));
          break;
        }
        case 5: {  // (a_j a_i^-1) a_i = a_j
          lhs = unit(ch.j);
          col.mul_gen(lhs, ch.i, -1);
          col.mul_gen(lhs, ch.i, 1);
          rhs = unit(ch.j);
          break;
        }
        case 6: {  // a_j^-1 (a_j a_i) = a_i
          Vector ji = unit(ch.j);
          col.mul_gen(ji, ch.i, 1);
          lhs = unit(ch.j, -1);
          col.mul(lhs, ji);
          rhs = unit(ch.i);
          break;
        }
        default: {  // (a_j^-1 a_i^-1) a_i = a_j^-1
          lhs = unit(ch.j, -1);
          col.mul_gen(lhs, ch.i, -1);
          col.mul_gen(lhs, ch.i, 1);
          rhs = unit(ch.j, -1);
        }
      }
      for (size_t g = 0; g < n; ++g) {
        if (lhs[g] != rhs[g]) {
          throw std::logic_error("inconsistent input presentation");
        }
      }
      Vector d(m);
      for (size_t k = 0; k < m; ++k) {
        d[k] = lhs[n + k] - rhs[n + k];
      }
      diffs[t] = std::move(d);
    });
    for (auto& d : diffs) {
      if (!is_zero(d)) {
        cv.relations.insert(std::move(d));
      }
    }

    auto const gab = generator_abelian_images(q, rank);
    for (auto const& t : tails) {
      Vector a;
      if (t.kind == Tail::Kind::image) {
        a = abelian_image(gab, q.map.images[t.x], rank);
        for (auto& e : a) {
          e = -e;
        }
        a[t.x] += 1;
      } else if (t.kind == Tail::Kind::power) {
        a = abelian_image(gab, to_vector(p.power(t.i), n), rank);
        for (size_t x = 0; x < rank; ++x) {
          a[x] = p.relative_order(t.i) * gab[t.i][x] - a[x];
        }
      } else {
        a = abelian_image(gab, to_vector(p.commutator(t.j, t.i), n), rank);
        for (auto& e : a) {
          e = -e;
        }
      }
      cv.abelian.push_back(std::move(a));
    }
    cv.quotient = std::move(q);
    return cv;
  }

  ////////////////////////////////////////////////////////////////////////
  // lift_endomorphism
  ////////////////////////////////////////////////////////////////////////

  CoverEndomorphism lift_endomorphism(Cover const&            cv,
                                      FreeEndomorphism const& phi) {
    auto const&      q   = cv.quotient;
    auto const&      p   = q.presentation;
    Collector const& col = cv.collector;
    size_t const     n   = p.size();
    size_t const     m   = cv.tail_count();
    if (phi.size() != q.map.images.size()) {
      throw std::invalid_argument(
          "endomorphism and cover are over different free groups");
    }

    CoverEndomorphism out;
    out.images.resize(n);
    for (size_t g = 0; g < n; ++g) {
      auto const& d = q.definitions[g];
      out.images[g] = d.image ? cv.lift(col, phi.image(d.x))
                              : col.commutator(out.images[d.j],
                                               out.images[d.i]);
    }
    // Image of an element of the quotient given by its first n coordinates.
    auto eval = [&](Vector const& x) {
      Vector r = col.identity();
      for (size_t g = 0; g < n; ++g) {
        if (x[g] != 0) {
          col.mul(r, col.pow(out.images[g], x[g]));
        }
      }
      return r;
    };

    out.on_tails = IntegerMatrix(0, m);
    for (auto const& t : cv.tails) {
      Vector lhs, rhs;
      if (t.kind == Tail::Kind::image) {
        lhs = cv.lift(col, phi.image(t.x));
        rhs = eval(q.map.images[t.x]);
      } else if (t.kind == Tail::Kind::power) {
        lhs = col.pow(out.images[t.i], p.relative_order(t.i));
        rhs = eval(to_vector(p.power(t.i), n));
      } else {
        lhs = col.commutator(out.images[t.j], out.images[t.i]);
        rhs = eval(to_vector(p.commutator(t.j, t.i), n));
      }
      Vector img = col.inverse(rhs);
      col.mul(img, lhs);
      for (size_t g = 0; g < n; ++g) {
        if (img[g] != 0) {
          throw NonInvariantError("the endomorphism does not map the "
                                  "central subgroup of the cover into "
                                  "itself");
        }
      }
      out.on_tails.append_row(Vector(img.begin() + n, img.end()));
    }
    for (auto const& r : cv.relations.rows()) {
      if (!cv.relations.contains(r * out.on_tails)) {
        throw NonInvariantError(
            "the endomorphism is not compatible with the cover relations");
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Schur multiplier of the quotient
  ////////////////////////////////////////////////////////////////////////

  Lattice central_intersection_with_derived(Cover const& cv) {
    size_t const  m    = cv.tail_count();
    size_t const  rank = cv.quotient.map.images.size();
    IntegerMatrix a(0, rank + m);
    for (size_t k = 0; k < m; ++k) {
      Vector row = cv.abelian[k];
      row.resize(rank + m, 0);
      row[rank + k] = 1;
      a.append_row(row);
    }
    auto    h = hnf(a);
    Lattice out(cv.relations);
    for (size_t r = 0; r < h.rank(); ++r) {
      if (h.pivots[r] >= rank) {
        Vector row = h.basis.row(r);
        out.insert(Vector(row.begin() + rank, row.end()));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // next_quotient
  ////////////////////////////////////////////////////////////////////////

  NilpotentQuotient next_quotient(Cover const&                          cv,
                                  LPresentation const&                  lp,
                                  std::vector<CoverEndomorphism> const& endos,
                                  unsigned                              jobs) {
    auto const&  q    = cv.quotient;
    auto const&  p    = q.presentation;
    size_t const n    = p.size();
    size_t const m    = cv.tail_count();
    size_t const c    = q.nilpotency_class;
    size_t const rank = lp.rank();
    if (q.map.images.size() != rank) {
      throw std::invalid_argument("cover and presentation do not match");
    }

    // Images of the relators in the central subgroup.
    std::vector<Vector> fixed(lp.fixed().size()), iterated(lp.iterated().size());
    detail::parallel_for(fixed.size() + iterated.size(), jobs, [&](size_t t) {
      if (t < fixed.size()) {
        fixed[t] = cv.lift_relator(lp.fixed()[t]);
      } else {
        size_t r    = t - fixed.size();
        iterated[r] = cv.lift_relator(lp.iterated()[r]);
      }
    });
    std::vector<IntegerMatrix> matrices;
    for (auto const& e : endos) {
      matrices.push_back(e.on_tails);
    }
    Lattice s = cv.relations;
    spin(s, iterated, matrices);
    for (auto const& v : fixed) {
      s.insert(v);
    }

    // Order the tails so that the candidates for new generators come last:
    // then every other tail is expressed in terms of candidates.
    auto candidate = [&](Tail const& t) {
      return c == 0 ? t.kind == Tail::Kind::image
                    : t.kind == Tail::Kind::commutator && p.weight(t.j) == c
                          && p.weight(t.i) == 1;
    };
    std::vector<size_t> pos(m);
    size_t              next = 0;
    for (size_t k = 0; k < m; ++k) {
      if (!candidate(cv.tails[k])) {
        pos[k] = next++;
      }
    }
    size_t const first_candidate = next;
    std::vector<size_t> tail_at(m);
    for (size_t k = 0; k < m; ++k) {
      if (candidate(cv.tails[k])) {
        pos[k] = next++;
      }
      tail_at[pos[k]] = k;
    }
    auto permute = [&](Vector const& v) {
      Vector w(m);
      for (size_t k = 0; k < m; ++k) {
        w[pos[k]] = v[k];
      }
      return w;
    };
    Lattice sp(m);
    for (auto const& r : s.rows()) {
      sp.insert(permute(r));
    }

    // Surviving candidates become the generators of weight c + 1.
    std::vector<std::optional<size_t>> new_gen(m);
    std::vector<size_t>                survivors;
    for (size_t k = 0; k < m; ++k) {
      if (k < first_candidate) {
        if (sp.pivot(k) != 1) {
          throw std::logic_error("lower central factor is not generated by "
                                 "the candidate commutators");
        }
      } else if (sp.pivot(k) != 1) {
        new_gen[k] = n + survivors.size();
        survivors.push_back(k);
      }
    }
    size_t const n2 = n + survivors.size();

    // Reduced vector in permuted coordinates -> word in the new generators.
    auto translate = [&](Vector const& v) {
      PcWord w;
      for (size_t k = 0; k < m; ++k) {
        if (v[k] != 0) {
          if (!new_gen[k]) {
            throw std::logic_error("reduction left an eliminated tail");
          }
          w.emplace_back(*new_gen[k], v[k]);
        }
      }
      return w;
    };
    auto reduced_tail = [&](size_t k) {
      Vector e(m, 0);
      e[pos[k]] = 1;
      return translate(sp.reduce(std::move(e)));
    };
    auto append = [](PcWord w, PcWord const& tail) {
      w.insert(w.end(), tail.begin(), tail.end());
      return w;
    };

    NilpotentQuotient out;
    auto&             np = out.presentation;
    for (size_t g = 0; g < n; ++g) {
      np.add_generator(p.weight(g), p.relative_order(g));
    }
    for (size_t k : survivors) {
      np.add_generator(c + 1, sp.pivot(k));
    }
    for (size_t g = 0; g < n; ++g) {
      if (p.finite(g)) {
        np.set_power(g, p.power(g));
      }
      for (size_t i = 0; i < g; ++i) {
        np.set_commutator(g, i, p.commutator(g, i));
      }
    }
    out.definitions = q.definitions;
    out.map.images.resize(rank);
    for (size_t x = 0; x < rank; ++x) {
      out.map.images[x] = extend(q.map.images[x], n2);
    }
    for (size_t k = 0; k < m; ++k) {
      auto const& t    = cv.tails[k];
      PcWord      tail = reduced_tail(k);
      if (t.kind == Tail::Kind::image) {
        for (auto const& [g, e] : tail) {
          out.map.images[t.x][g] += e;
        }
      } else if (t.kind == Tail::Kind::power) {
        np.set_power(t.i, append(p.power(t.i), tail));
      } else {
        np.set_commutator(t.j, t.i, append(p.commutator(t.j, t.i), tail));
      }
    }
    for (size_t k : survivors) {
      auto const& t = cv.tails[tail_at[k]];
      out.definitions.push_back(t.kind == Tail::Kind::image
                                    ? Definition::of_image(t.x)
                                    : Definition::of_commutator(t.j, t.i));
      if (sp.has_pivot(k)) {
        Vector rest = sp.row(k);
        rest[k] = 0;
        for (auto& e : rest) {
          e = -e;
        }
        np.set_power(*new_gen[k], translate(sp.reduce(std::move(rest))));
      }
    }
    out.nilpotency_class = c + 1;
    return out;
  }

}  // namespace lpnq
