#include "lpnq/lpres.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

namespace lpnq {

  namespace {
    void check_word(Word const& w, size_t n) {
      for (auto const& s : w.syllables()) {
        if (s.gen >= n) {
          throw std::invalid_argument(
              "relator uses a generator outside the alphabet");
        }
      }
    }
  }  // namespace

  LPresentation::LPresentation(std::string                    name,
                               Alphabet                       alphabet,
                               std::vector<Word>              fixed,
                               std::vector<NamedEndomorphism> endomorphisms,
                               std::vector<Word>              iterated,
                               bool                           invariant)
      : _name(std::move(name)),
        _alphabet(std::move(alphabet)),
        _fixed(std::move(fixed)),
        _endos(std::move(endomorphisms)),
        _iterated(std::move(iterated)),
        _invariant(invariant || _fixed.empty()) {
    size_t const n = _alphabet.size();
    for (auto const& w : _fixed) {
      check_word(w, n);
    }
    for (auto const& w : _iterated) {
      check_word(w, n);
    }
    for (auto const& e : _endos) {
      if (e.map.size() != n) {
        throw std::invalid_argument("endomorphism " + e.name
                                    + " is not over the alphabet");
      }
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Catalog
  ////////////////////////////////////////////////////////////////////////

  namespace {
    struct CatalogEntry {
      char const* name;
      char const* source;
    };

    std::array<CatalogEntry, 5> const catalog_entries = {{
        {"grigorchuk", R"(
group grigorchuk {
  generators: a, b, c, d;
  fixed: a^2, b^2, c^2, d^2, b*c*d;
  endomorphism sigma: a -> c^a, b -> d, c -> b, d -> c;
  iterated: (a*d)^4, (a*d*a*c*a*c)^4;
  invariant: true;
})"},
        // The printed relator list repeats [d,(c^a*b)^c]; it is kept.
        {"twisted_twin", R"(
group twisted_twin {
  generators: a, b, c, d;
  fixed: a^2, b^2, c^2, d^2;
  endomorphism sigma: a -> c^a, b -> d, c -> b^a, d -> c;
  iterated: [d^a,d], [d,c^a*b], [d,(c^a*b)^c], [d,(c^a*b)^c],
            [c^a*b,c*b^a];
  invariant: true;
})"},
        {"grigorchuk_supergroup", R"(
group grigorchuk_supergroup {
  generators: a, b, c, d;
  fixed: ;
  endomorphism sigma: a -> a*b*a, b -> d, c -> b, d -> c;
  iterated: a^2, [b,c], [c,c^a], [c,d^a], [d,d^a],
            [c^(a*b),(c^(a*b))^a], [c^(a*b),(d^(a*b))^a],
            [d^(a*b),(d^(a*b))^a];
})"},
        {"basilica", R"(
group basilica {
  generators: a, b;
  fixed: ;
  endomorphism sigma: a -> b^2, b -> a;
  iterated: [a,a^b];
})"},
        {"bsv", R"(
group bsv {
  generators: a, b;
  fixed: ;
  endomorphism epsilon: a -> a^2, b -> a^2*b^-1*a^2;
  iterated: [b,b^a], [b,b^(a^3)];
})"},
    }};
  }  // namespace

  std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (auto const& e : catalog_entries) {
      out.emplace_back(e.name);
    }
    return out;
  }

  LPresentation catalog(std::string_view name) {
    for (auto const& e : catalog_entries) {
      if (name == e.name) {
        return parse(e.source);
      }
    }
    throw std::invalid_argument("unknown group \"" + std::string(name)
                                + "\"");
  }

  ////////////////////////////////////////////////////////////////////////
  // Endomorphism monoid
  ////////////////////////////////////////////////////////////////////////

  std::vector<FreeEndomorphism>
  enumerate_monoid(std::vector<FreeEndomorphism> const& phis,
                   size_t                               rank,
                   size_t                               depth) {
    std::vector<FreeEndomorphism> out = {FreeEndomorphism::identity(rank)};
    size_t                        level_begin = 0;
    for (size_t k = 0; k < depth && !phis.empty(); ++k) {
      size_t const level_end = out.size();
      for (size_t i = level_begin; i < level_end; ++i) {
        for (auto const& phi : phis) {
          out.push_back(compose(out[i], phi));
        }
      }
      level_begin = level_end;
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Adjustment
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Product of words[j]^coeffs[j] in index order.
    Word combination(std::vector<Word const*> const& words,
                     Vector const&                   coeffs) {
      Word w;
      for (size_t j = 0; j < coeffs.size(); ++j) {
        if (coeffs[j] != 0) {
          w *= words[j]->pow(coeffs[j]);
        }
      }
      return w;
    }

    // New basis words from a Hermite basis with transform over sources: a
    // source whose exponent vector is the basis row is preferred to a
    // product.
    std::vector<Word> basis_words(HNFBasis const&                 h,
                                  std::vector<Word const*> const& sources,
                                  size_t                          n) {
      std::vector<Word> out;
      for (size_t k = 0; k < h.rank(); ++k) {
        Vector const row = h.basis.row(k);
        auto         it  = std::find_if(
            sources.begin(), sources.end(), [&](Word const* w) {
              return exponent_vector(*w, n) == row;
            });
        out.push_back(it != sources.end()
                          ? **it
                          : combination(sources, h.transform->row(k)));
      }
      return out;
    }

    // w * (product of basis_words[k]^-c_k), where c are the coordinates of
    // the exponent vector of w over the basis.
    PowerProduct remove_abelian_part(Word const&              w,
                                     std::vector<Word> const& basis_words,
                                     HNFBasis const&          h,
                                     size_t                   n) {
      auto         c   = membership(exponent_vector(w, n), h);
      PowerProduct out = {{w, Integer(1)}};
      for (size_t k = 0; k < c->size(); ++k) {
        if ((*c)[k] != 0) {
          out.emplace_back(basis_words[k], -(*c)[k]);
        }
      }
      return out;
    }

    void push_relator(std::vector<Word>&         words,
                      std::vector<PowerProduct>& factors,
                      PowerProduct               p) {
      Word w = evaluate(p);
      if (!w.empty()) {
        words.push_back(std::move(w));
        factors.push_back(std::move(p));
      }
    }
  }  // namespace

  AdjustedLPresentation adjust(LPresentation const& lp) {
    if (!lp.invariant()) {
      throw std::invalid_argument("presentation " + lp.name()
                                  + " is not declared invariant");
    }
    size_t const n = lp.rank();
    std::vector<FreeEndomorphism> phis;
    for (auto const& e : lp.endomorphisms()) {
      phis.push_back(e.map);
    }

    AdjustedLPresentation out;

    // Fixed relators: one Hermite basis of their exponent vectors.
    IntegerMatrix aq(0, n);
    std::vector<Word const*> sources;
    for (auto const& q : lp.fixed()) {
      aq.append_row(exponent_vector(q, n));
      sources.push_back(&q);
    }
    HNFBasis          h     = hnf(aq, true);
    std::vector<Word> basis = basis_words(h, sources, n);
    for (auto const& q : lp.fixed()) {
      push_relator(out.derived_fixed,
                   out.derived_fixed_factors,
                   remove_abelian_part(q, basis, h, n));
    }

    // Iterated relators, processed in FIFO order.
    std::deque<Word> queue(lp.iterated().begin(), lp.iterated().end());
    while (!queue.empty()) {
      Word r = std::move(queue.front());
      queue.pop_front();
      Vector ar = exponent_vector(r, n);
      if (membership(ar, h)) {
        push_relator(out.derived_iterated,
                     out.derived_iterated_factors,
                     remove_abelian_part(r, basis, h, n));
        continue;
      }
      auto [nh, report] = extend_basis(h, ar);
      sources.clear();
      for (auto const& u : basis) {
        sources.push_back(&u);
      }
      sources.push_back(&r);
      HNFBasis nh_full    = nh;
      nh_full.transform   = report.transform;
      std::vector<Word> nb = basis_words(nh_full, sources, n);

      // Old basis words and r that are no longer basis words become
      // relators in F'; the images of their derived parts are relations
      // too and are queued, as are the images of r.
      std::vector<Word> dropped;
      for (auto const& u : basis) {
        if (std::find(nb.begin(), nb.end(), u) == nb.end()) {
          dropped.push_back(u);
        }
      }
      for (auto const& u : dropped) {
        size_t before = out.derived_fixed.size();
        push_relator(out.derived_fixed,
                     out.derived_fixed_factors,
                     remove_abelian_part(u, nb, nh, n));
        if (out.derived_fixed.size() > before) {
          for (auto const& phi : phis) {
            queue.push_back(phi.apply(out.derived_fixed.back()));
          }
        }
      }
      if (std::find(nb.begin(), nb.end(), r) == nb.end()) {
        push_relator(out.derived_fixed,
                     out.derived_fixed_factors,
                     remove_abelian_part(r, nb, nh, n));
      }
      for (auto const& phi : phis) {
        queue.push_back(phi.apply(r));
      }
      h     = std::move(nh);
      basis = std::move(nb);
    }

    h.transform = std::nullopt;
    out.basis_words = basis;
    out.hirsch      = n - h.rank();
    out.basis       = std::move(h);

    std::vector<Word> fixed = out.derived_fixed;
    fixed.insert(fixed.end(), basis.begin(), basis.end());
    out.base = LPresentation(lp.name(),
                             lp.alphabet(),
                             std::move(fixed),
                             lp.endomorphisms(),
                             out.derived_iterated,
                             true);
    return out;
  }

}  // namespace lpnq
