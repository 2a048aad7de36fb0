#include "lpnq/conjecture.hpp"

#include <stdexcept>

namespace lpnq {

  namespace {
    using u64 = unsigned long long;

    AbelianInvariants elementary(size_t rank) {
      return abelian_invariants(std::vector<Integer>(rank, 2), 0);
    }

    Integer two_to(u64 k) {
      return Integer(1) << k;
    }

    // Largest m with base * 2^m <= c.
    u64 doubling_index(u64 c, u64 base) {
      u64 m = 0;
      while (base << (m + 1) <= c) {
        ++m;
      }
      return m;
    }

    AbelianInvariants grigorchuk(u64 c) {
      if (c <= 2) {
        return elementary(c);
      }
      return elementary(2 * doubling_index(c, 3) + 3);
    }

    AbelianInvariants twisted_twin(u64 c) {
      if (c <= 3) {
        return elementary(c == 1 ? 2 : c == 2 ? 5 : 7);
      }
      u64 m = doubling_index(c, 4);
      return elementary(c < (u64(4) << m) + (u64(2) << m) ? 4 * (m + 1) + 4
                                                          : 4 * (m + 1) + 7);
    }

    AbelianInvariants supergroup(u64 c) {
      if (c <= 3) {
        return elementary(c == 1 ? 3 : c == 2 ? 6 : 7);
      }
      u64 m = doubling_index(c, 2);
      return elementary(c < (u64(3) << m) ? 4 * m + 5 : 4 * m + 7);
    }

    AbelianInvariants basilica(u64 c) {
      std::vector<Integer> torsion;
      if (c >= 6) {
        torsion.push_back(two_to(2 * ((c - 6) / 2 + 1)));
      }
      for (u64 l = 1; 3 * (u64(1) << (l + 1)) <= c; ++l) {
        u64 period = u64(1) << (l + 1);
        u64 m      = c / period - 3;
        u64 offset = c - (3 + m) * period;
        torsion.push_back(offset < (u64(1) << (l - 1)) ? two_to(2 * m + 1)
                                                        : two_to(2 * m + 2));
      }
      return abelian_invariants(std::move(torsion), 2);
    }

    AbelianInvariants bsv(u64 c) {
      std::vector<Integer> torsion;
      if (c >= 4) {
        torsion.push_back(two_to(2 * ((c - 4) / 2) + 1));
      }
      for (u64 l = 1; 5 * (u64(1) << (l - 1)) <= c; ++l) {
        u64 h = u64(1) << (l - 1);
        u64 m = (c - 5 * h) / (8 * h);
        u64 r = c - 8 * h * m;
        torsion.push_back(r < 6 * h    ? two_to(4 * m + 1)
                          : r < 10 * h ? two_to(4 * m + 2)
                                       : two_to(4 * m + 4));
      }
      for (u64 l = 1; 9 * (u64(1) << (l - 1)) <= c; ++l) {
        u64 h = u64(1) << (l - 1);
        u64 m = (c - 9 * h) / (8 * h);
        u64 r = c - 8 * h * m;
        torsion.push_back(r < 12 * h   ? two_to(4 * m + 1)
                          : r < 14 * h ? two_to(4 * m + 2)
                          : r < 16 * h ? two_to(4 * m + 3)
                                       : two_to(4 * m + 4));
      }
      return abelian_invariants(std::move(torsion), 2);
    }
  }  // namespace

  std::vector<std::string> conjecture_groups() {
    return {"grigorchuk",
            "twisted_twin",
            "grigorchuk_supergroup",
            "basilica",
            "bsv"};
  }

  std::optional<AbelianInvariants> conjectured_dwyer_quotient(
      std::string_view group,
      size_t           c) {
    if (c == 0) {
      throw std::invalid_argument("the class must be at least 1");
    }
    if (group == "grigorchuk") {
      return grigorchuk(c);
    } else if (group == "twisted_twin") {
      return twisted_twin(c);
    } else if (group == "grigorchuk_supergroup") {
      return supergroup(c);
    } else if (group == "basilica") {
      return c < 2 ? std::nullopt : std::optional(basilica(c));
    } else if (group == "bsv") {
      return c < 2 ? std::nullopt : std::optional(bsv(c));
    }
    throw std::invalid_argument("no closed form is known for \""
                                + std::string(group) + "\"");
  }

}  // namespace lpnq
