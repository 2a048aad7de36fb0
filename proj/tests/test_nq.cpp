#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "fixtures.hpp"
#include "oracle/perm_group.hpp"

#include "lpnq/lpres.hpp"
#include "lpnq/nq.hpp"

namespace lpnq {

  using oracle::operator*;

  namespace {
    using oracle::Perm;
    using oracle::PermGroup;

    // Permutation of the image of w, given the images of the generators.
    Perm evaluate(Word const& w, std::vector<Perm> const& gens) {
      Perm out = oracle::identity(gens[0].size());
      for (auto const& s : w.syllables()) {
        out = out * oracle::power(gens[s.gen], static_cast<long>(s.exp));
      }
      return out;
    }

    // Images of the polycyclic generators, following their definitions.
    std::vector<Perm> pc_images(NilpotentQuotient const& q,
                                std::vector<Perm> const& gens) {
      std::vector<Perm> out;
      for (auto const& d : q.definitions) {
        out.push_back(d.image ? gens[d.x]
                              : oracle::commutator(out[d.j], out[d.i]));
      }
      return out;
    }

    Perm evaluate(Vector const& v, std::vector<Perm> const& pc) {
      Perm out = oracle::identity(pc[0].size());
      for (size_t g = 0; g < v.size(); ++g) {
        out = out * oracle::power(pc[g], static_cast<long>(v[g]));
      }
      return out;
    }

    Word random_word(std::mt19937& rng, size_t rank, size_t length) {
      std::uniform_int_distribution<size_t> gen(0, rank - 1);
      std::uniform_int_distribution<int>    exp(-3, 3);
      std::vector<Syllable>                 raw;
      for (size_t k = 0; k < length; ++k) {
        raw.push_back({gen(rng), exp(rng)});
      }
      return Word::reduce(raw);
    }

    std::vector<size_t> elementary_ranks(
        std::vector<AbelianInvariants> const& factors) {
      std::vector<size_t> out;
      for (auto const& f : factors) {
        auto e = f.elementary();
        REQUIRE(e);
        REQUIRE(e->first == 2);
        out.push_back(e->second);
      }
      return out;
    }

    // Compares G / gamma_{c+1} G with the permutation group generated by
    // gens, for c = 1, ..., max_class: layer orders agree, and the normal
    // form of random words maps to the permutation of the word modulo
    // gamma_{c+1}.
    void check_against_permutations(LPresentation const&     lp,
                                     std::vector<Perm> const& gens,
                                     size_t                   max_class) {
      size_t const n   = gens[0].size();
      auto const   lcs = oracle::lower_central_series(n, gens, max_class + 1);
      std::mt19937 rng(20261015);
      for (size_t c = 1; c <= max_class; ++c) {
        auto const q       = nilpotent_quotient(lp, c);
        auto const factors = lcs_factors(q.presentation);
        for (size_t w = 1; w <= c; ++w) {
          size_t const layer
              = lcs[w - 1].log2_order() - lcs[w].log2_order();
          if (w <= factors.size()) {
            auto order = factors[w - 1].order();
            REQUIRE(order);
            REQUIRE(*order == Integer(1) << layer);
          } else {
            REQUIRE(layer == 0);
          }
        }
        Collector const col(q.presentation);
        auto const      pc = pc_images(q, gens);
        for (int trial = 0; trial < 40; ++trial) {
          Word const w  = random_word(rng, lp.rank(), 12);
          Vector     nf = q.map(col, w);
          Perm const r  = oracle::inverse(evaluate(nf, pc)) * evaluate(w, gens);
          REQUIRE(lcs[c].contains(r));
        }
      }
    }

    Perm cycle_perm(std::vector<std::uint16_t> images) {
      return images;
    }

    // Number of basic commutators of weight n on r generators.
    std::int64_t witt(std::int64_t r, std::int64_t n) {
      auto mobius = [](std::int64_t d) {
        int sign = 1;
        for (std::int64_t p = 2; p * p <= d; ++p) {
          if (d % p == 0) {
            d /= p;
            if (d % p == 0) {
              return 0;
            }
            sign = -sign;
          }
        }
        return d > 1 ? -sign : sign;
      };
      std::int64_t sum = 0;
      for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
          std::int64_t pw = 1;
          for (std::int64_t k = 0; k < n / d; ++k) {
            pw *= r;
          }
          sum += mobius(d) * pw;
        }
      }
      return sum / n;
    }
  }  // namespace

  TEST_CASE("permutation oracle for the Grigorchuk group", "[nq][oracle]") {
    auto const gens = oracle::grigorchuk_level(7);
    PermGroup  g(128, gens);
    // |G / St(n)| = 2^(5 * 2^(n-3) + 2) for n >= 3.
    REQUIRE(g.log2_order() == 5 * 16 + 2);
    auto const lcs = oracle::lower_central_series(128, gens, 7);
    std::vector<size_t> ranks;
    for (size_t w = 0; w + 1 < lcs.size(); ++w) {
      for (auto const& x : lcs[w].generators()) {
        REQUIRE(lcs[w + 1].contains(x * x));
      }
      ranks.push_back(lcs[w].log2_order() - lcs[w + 1].log2_order());
    }
    REQUIRE(ranks == fixtures::grigorchuk_lcs_ranks);
  }

  TEST_CASE("Grigorchuk lower central factors", "[nq]") {
    auto const q = nilpotent_quotient(catalog("grigorchuk"), 6);
    REQUIRE(q.nilpotency_class == 6);
    REQUIRE(elementary_ranks(lcs_factors(q.presentation))
            == fixtures::grigorchuk_lcs_ranks);
  }

  TEST_CASE("Grigorchuk collection against permutations", "[nq][oracle]") {
    check_against_permutations(
        catalog("grigorchuk"), oracle::grigorchuk_level(7), 6);
  }

  TEST_CASE("dihedral group of order 16", "[nq][oracle]") {
    // <a, b | a^2, b^2, (a*b)^8> acting on the vertices of an octagon
    auto lp = parse(R"(group d16 {
      generators: a, b;
      fixed: a^2, b^2, (a*b)^8;
      iterated: ;
      invariant: true;
    })");
    std::vector<std::uint16_t> a(8), b(8);
    for (std::uint16_t x = 0; x < 8; ++x) {
      a[x] = (8 - x) % 8;
      b[x] = (9 - x) % 8;
    }
    std::vector<Perm> gens = {cycle_perm(a), cycle_perm(b)};
    check_against_permutations(lp, gens, 4);
    auto const q = nilpotent_quotient(lp, 10);
    REQUIRE(q.nilpotency_class == 10);
    REQUIRE(q.presentation.nilpotency_class() == 3);
    REQUIRE(q.presentation.size() == 4);
  }

  TEST_CASE("free nilpotent quotients", "[nq]") {
    for (size_t r : {2, 3}) {
      std::vector<std::string> names;
      for (size_t i = 0; i < r; ++i) {
        names.push_back(std::string(1, char('a' + i)));
      }
      LPresentation lp("free", Alphabet(names), {}, {}, {}, true);
      size_t const  c       = r == 2 ? 5 : 4;
      auto const    factors = lcs_factors(nilpotent_quotient(lp, c).presentation);
      REQUIRE(factors.size() == c);
      for (size_t w = 1; w <= c; ++w) {
        REQUIRE(factors[w - 1].torsion.empty());
        REQUIRE(std::int64_t(factors[w - 1].free_rank)
                == witt(std::int64_t(r), std::int64_t(w)));
      }
    }
  }

  TEST_CASE("abelianizations", "[nq]") {
    auto ab = [](std::string const& name) {
      return lcs_factors(nilpotent_quotient(catalog(name), 1).presentation)
          .at(0);
    };
    REQUIRE(ab("grigorchuk") == abelian_invariants({2, 2, 2}, 0));
    REQUIRE(ab("basilica") == abelian_invariants({}, 2));
    REQUIRE(ab("bsv") == abelian_invariants({}, 2));
    REQUIRE(ab("twisted_twin") == abelian_invariants({2, 2, 2, 2}, 0));
  }

  TEST_CASE("nilpotent group stops early", "[nq]") {
    auto lp = parse(R"(group z2 {
      generators: a, b;
      fixed: [a, b];
      iterated: ;
      invariant: true;
    })");
    auto const q = nilpotent_quotient(lp, 4);
    REQUIRE(q.presentation.nilpotency_class() == 1);
    REQUIRE(lcs_factors(q.presentation).size() == 1);
    REQUIRE(lcs_factors(q.presentation)[0] == abelian_invariants({}, 2));
  }

  TEST_CASE("collector group axioms", "[nq]") {
    std::mt19937 rng(7);
    for (auto const& name : {"grigorchuk", "basilica", "bsv"}) {
      auto const      q = nilpotent_quotient(catalog(name), 5);
      Collector const col(q.presentation);
      size_t const    rank = q.map.images.size();
      for (int trial = 0; trial < 30; ++trial) {
        Vector x = q.map(col, random_word(rng, rank, 8));
        Vector y = q.map(col, random_word(rng, rank, 8));
        Vector z = q.map(col, random_word(rng, rank, 8));
        REQUIRE(col.product(col.product(x, y), z)
                == col.product(x, col.product(y, z)));
        REQUIRE(col.product(x, col.inverse(x)) == col.identity());
        REQUIRE(col.pow(x, 3) == col.product(col.product(x, x), x));
        REQUIRE(col.pow(x, -2) == col.inverse(col.product(x, x)));
        Vector const xy = col.product(x, y);
        REQUIRE(col.product(col.product(y, x), col.commutator(x, y)) == xy);
      }
    }
  }

  TEST_CASE("words map to the product of their images", "[nq]") {
    std::mt19937    rng(11);
    auto const      q = nilpotent_quotient(catalog("twisted_twin"), 4);
    Collector const col(q.presentation);
    for (int trial = 0; trial < 30; ++trial) {
      Word const u = random_word(rng, 4, 6);
      Word const v = random_word(rng, 4, 6);
      REQUIRE(q.map(col, u * v) == col.product(q.map(col, u), q.map(col, v)));
    }
  }

  TEST_CASE("relators map to the identity", "[nq]") {
    for (auto const& name : catalog_names()) {
      auto const      lp = catalog(name);
      auto const      q  = nilpotent_quotient(lp, 4);
      Collector const col(q.presentation);
      for (auto const& r : lp.fixed()) {
        REQUIRE(q.map(col, r) == col.identity());
      }
      for (auto const& e : enumerate_monoid(
               [&] {
                 std::vector<FreeEndomorphism> phis;
                 for (auto const& ne : lp.endomorphisms()) {
                   phis.push_back(ne.map);
                 }
                 return phis;
               }(),
               lp.rank(),
               2)) {
        for (auto const& r : lp.iterated()) {
          REQUIRE(q.map(col, e.apply(r)) == col.identity());
        }
      }
    }
  }

  TEST_CASE("induced endomorphisms", "[nq]") {
    SECTION("basilica on the abelianization") {
      auto const lp  = catalog("basilica");
      auto const q   = nilpotent_quotient(lp, 1);
      auto const img = induce_endomorphism(q, lp.endomorphisms()[0].map);
      // a -> b^2, b -> a
      REQUIRE(img == std::vector<Vector>{{0, 2}, {1, 0}});
    }
    SECTION("identity") {
      auto const lp  = catalog("grigorchuk");
      auto const q   = nilpotent_quotient(lp, 3);
      auto const img = induce_endomorphism(
          q, FreeEndomorphism::identity(lp.rank()));
      for (size_t g = 0; g < img.size(); ++g) {
        Vector e(img.size(), 0);
        e[g] = 1;
        REQUIRE(img[g] == e);
      }
    }
    SECTION("a map that does not induce one") {
      auto const lp = catalog("grigorchuk");
      auto const q  = nilpotent_quotient(lp, 2);
      Alphabet const& x = lp.alphabet();
      FreeEndomorphism bad({parse_word("a*b", x),
                            parse_word("b", x),
                            parse_word("c", x),
                            parse_word("d", x)});
      REQUIRE_THROWS_AS(induce_endomorphism(q, bad), NonInvariantError);
    }
  }

  TEST_CASE("undeclared invariance is rejected", "[nq]") {
    auto lp = parse(R"(group g {
      generators: a, b;
      fixed: a^2;
      endomorphism s: a -> b, b -> a;
      iterated: ;
    })");
    REQUIRE_FALSE(lp.invariant());
    REQUIRE_THROWS_AS(nilpotent_quotient(lp, 2), std::invalid_argument);
  }

}  // namespace lpnq
