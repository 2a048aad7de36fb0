#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "lpnq/cover.hpp"
#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"

namespace lpnq {

  namespace {
    AbelianInvariants multiplier(Cover const& cv) {
      return subquotient_invariants(central_intersection_with_derived(cv),
                                    cv.relations);
    }

    Cover cover_of(LPresentation const& lp, size_t c, unsigned jobs = 1) {
      return build_cover(nilpotent_quotient(lp, c), jobs);
    }

    // Z^k_d1 x ... with d = 0 standing for Z: the multiplier is the sum of
    // Z_gcd(d_i, d_j) over i < j.
    AbelianInvariants abelian_multiplier(std::vector<int> const& d) {
      std::vector<Integer> torsion;
      size_t               free = 0;
      for (size_t i = 0; i < d.size(); ++i) {
        for (size_t j = i + 1; j < d.size(); ++j) {
          int g = std::gcd(d[i], d[j]);
          if (g == 0) {
            ++free;
          } else if (g > 1) {
            torsion.push_back(g);
          }
        }
      }
      return abelian_invariants(torsion, free);
    }

    LPresentation abelian_group(std::vector<int> const& d) {
      std::vector<std::string> names;
      for (size_t i = 0; i < d.size(); ++i) {
        names.push_back(std::string(1, char('a' + i)));
      }
      std::vector<Word> fixed;
      for (size_t i = 0; i < d.size(); ++i) {
        if (d[i] != 0) {
          fixed.push_back(Word::generator(i, d[i]));
        }
        for (size_t j = i + 1; j < d.size(); ++j) {
          fixed.push_back(
              commutator(Word::generator(i), Word::generator(j)));
        }
      }
      return LPresentation(
          "abelian", Alphabet(names), std::move(fixed), {}, {}, true);
    }

    Vector abelian_image(Cover const& cv, Vector const& tails) {
      Vector out(cv.quotient.map.images.size(), 0);
      for (size_t k = 0; k < tails.size(); ++k) {
        for (size_t x = 0; x < out.size(); ++x) {
          out[x] += tails[k] * cv.abelian[k][x];
        }
      }
      return out;
    }

    // Exponent matrix of phi: row x is the exponent vector of x^phi.
    IntegerMatrix exponent_matrix(FreeEndomorphism const& phi) {
      IntegerMatrix m(0, phi.size());
      for (size_t x = 0; x < phi.size(); ++x) {
        m.append_row(exponent_vector(phi.image(x), phi.size()));
      }
      return m;
    }
  }  // namespace

  TEST_CASE("multipliers of finite abelian groups", "[cover]") {
    std::mt19937                       rng(3);
    std::uniform_int_distribution<int> pick(0, 5);
    int const                          orders[] = {0, 2, 3, 4, 6, 12};
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<int> d(2 + trial % 2);
      for (auto& x : d) {
        x = orders[pick(rng)];
      }
      INFO("orders " << d[0] << " " << d[1]);
      REQUIRE(multiplier(cover_of(abelian_group(d), 1))
              == abelian_multiplier(d));
    }
  }

  TEST_CASE("multipliers of small 2-groups", "[cover]") {
    auto group = [](std::string const& fixed) {
      return parse("group g { generators: a, b; fixed: " + fixed
                   + "; iterated: ; invariant: true; }");
    };
    // dihedral of order 8 and 16, quaternion of order 8
    REQUIRE(multiplier(cover_of(group("a^2, b^2, (a*b)^4"), 2))
            == abelian_invariants({2}, 0));
    REQUIRE(multiplier(cover_of(group("a^2, b^2, (a*b)^8"), 3))
            == abelian_invariants({2}, 0));
    REQUIRE(multiplier(cover_of(group("a^4, a^2*b^-2, b^-1*a*b*a"), 2))
            == abelian_invariants({}, 0));
  }

  TEST_CASE("covers of free nilpotent groups", "[cover]") {
    // The cover of F / gamma_{c+1} F is F / gamma_{c+2} F, so the tails
    // span a free abelian group of rank 1, 2, 3, 6 for two generators.
    LPresentation lp("free", Alphabet({"a", "b"}), {}, {}, {}, true);
    size_t const  ranks[] = {1, 2, 3, 6};
    for (size_t c = 1; c <= 4; ++c) {
      Cover const cv = cover_of(lp, c);
      REQUIRE(cv.relations.quotient_invariants()
              == abelian_invariants({}, ranks[c - 1]));
    }
  }

  TEST_CASE("relators lift into the tails", "[cover]") {
    for (auto const& name : catalog_names()) {
      auto const  lp = catalog(name);
      Cover const cv = cover_of(lp, 3);
      for (auto const& r : lp.fixed()) {
        Vector const t = cv.lift_relator(r);
        REQUIRE(t.size() == cv.tail_count());
        REQUIRE(abelian_image(cv, t) == exponent_vector(r, lp.rank()));
      }
      for (auto const& r : lp.iterated()) {
        Vector const t = cv.lift_relator(r);
        REQUIRE(abelian_image(cv, t) == exponent_vector(r, lp.rank()));
      }
      for (auto const& row : cv.relations.rows()) {
        REQUIRE(abelian_image(cv, row) == Vector(lp.rank(), 0));
      }
    }
  }

  TEST_CASE("lifted endomorphisms", "[cover]") {
    SECTION("identity") {
      auto const  lp = catalog("basilica");
      Cover const cv = cover_of(lp, 3);
      auto const  e
          = lift_endomorphism(cv, FreeEndomorphism::identity(lp.rank()));
      for (size_t k = 0; k < cv.tail_count(); ++k) {
        Vector d = e.on_tails.row(k);
        d[k] -= 1;
        REQUIRE(cv.relations.contains(d));
      }
    }
    SECTION("endomorphisms of the catalog groups") {
      for (auto const& name : catalog_names()) {
        auto const  lp = catalog(name);
        Cover const cv = cover_of(lp, 2);
        Lattice const derived = central_intersection_with_derived(cv);
        for (auto const& ne : lp.endomorphisms()) {
          auto const    e  = lift_endomorphism(cv, ne.map);
          IntegerMatrix ex = exponent_matrix(ne.map);
          for (size_t k = 0; k < cv.tail_count(); ++k) {
            REQUIRE(abelian_image(cv, e.on_tails.row(k))
                    == cv.abelian[k] * ex);
          }
          for (auto const& row : cv.relations.rows()) {
            REQUIRE(cv.relations.contains(row * e.on_tails));
          }
          for (auto const& row : derived.rows()) {
            REQUIRE(derived.contains(row * e.on_tails));
          }
        }
      }
    }
  }

  TEST_CASE("parallel consistency checks are deterministic", "[cover]") {
    auto const  lp = catalog("twisted_twin");
    Cover const a  = cover_of(lp, 3, 1);
    Cover const b  = cover_of(lp, 3, 4);
    REQUIRE(a.tails == b.tails);
    REQUIRE(a.relations.rows() == b.relations.rows());
  }

  TEST_CASE("next quotient from the cover", "[cover]") {
    auto const lp = catalog("grigorchuk");
    NilpotentQuotient   q = trivial_quotient(lp.rank());
    for (size_t c = 1; c <= 4; ++c) {
      Cover const cv = build_cover(q);
      std::vector<CoverEndomorphism> endos;
      for (auto const& ne : lp.endomorphisms()) {
        endos.push_back(lift_endomorphism(cv, ne.map));
      }
      q = next_quotient(cv, lp, endos);
      REQUIRE(q.nilpotency_class == c);
      REQUIRE(q.presentation.size() == nilpotent_quotient(lp, c).presentation.size());
    }
  }

}  // namespace lpnq
