#pragma once

// Elements and endomorphisms of finitely generated free groups.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lpnq/integer.hpp"

namespace lpnq {

  class IntegerMatrix;

  // Ordered list of distinct generator names; fixes the basis of F.
  class Alphabet {
   public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    size_t size() const noexcept {
      return _names.size();
    }
    std::string const& name(size_t i) const {
      return _names.at(i);
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::optional<size_t> index_of(std::string_view name) const;

    bool operator==(Alphabet const&) const = default;

   private:
    std::vector<std::string> _names;
  };

  // One run g^e of a word; e is never zero inside a Word.
  struct Syllable {
    size_t  gen;
    Integer exp;

    bool operator==(Syllable const&) const = default;
  };

  // Freely reduced word stored run-length encoded: adjacent syllables have
  // distinct generators and nonzero exponents.
  class Word {
   public:
    Word() = default;

    // Freely reduces an arbitrary sequence of syllables (zero exponents and
    // repeated generators allowed).
    static Word reduce(std::span<Syllable const> raw);
    static Word generator(size_t gen, Integer exp = 1);

    std::vector<Syllable> const& syllables() const noexcept {
      return _syl;
    }
    bool empty() const noexcept {
      return _syl.empty();
    }
    // Sum of |exponents|, i.e. the letter length.
    Integer length() const;

    Word operator*(Word const& that) const;
    Word& operator*=(Word const& that);
    Word inverse() const;
    Word pow(Integer n) const;
    // by^-1 * this * by
    Word conjugate(Word const& by) const;

    bool operator==(Word const&) const = default;

   private:
    void push(size_t gen, Integer const& exp);

    std::vector<Syllable> _syl;
  };

  // u^-1 v^-1 u v
  Word commutator(Word const& u, Word const& v);

  // Image of w in the abelianization Z^n.
  Vector exponent_vector(Word const& w, size_t n);

  // Endomorphism of F given by the images of the generators.
  class FreeEndomorphism {
   public:
    FreeEndomorphism() = default;
    explicit FreeEndomorphism(std::vector<Word> images);

    static FreeEndomorphism identity(size_t n);

    size_t size() const noexcept {
      return _images.size();
    }
    Word const& image(size_t gen) const {
      return _images.at(gen);
    }
    std::vector<Word> const& images() const noexcept {
      return _images;
    }

    // Throws std::invalid_argument if w uses a generator outside the domain.
    Word apply(Word const& w) const;

    // Rows are the exponent vectors of the generator images, so that
    // exponent_vector(apply(w)) = exponent_vector(w) * matrix().
    IntegerMatrix matrix() const;

    bool operator==(FreeEndomorphism const&) const = default;

   private:
    std::vector<Word> _images;
  };

  // Left-to-right action: compose(phi, psi) sends w to (w^phi)^psi, i.e.
  // phi is applied first.
  FreeEndomorphism compose(FreeEndomorphism const& phi,
                           FreeEndomorphism const& psi);

  // Renders w over the alphabet as "a^2*b^-1*c", or "1" for the empty word.
  std::string to_string(Word const& w, Alphabet const& alphabet);

  // Shortest u with w = u^k, k >= 1; a one-syllable word g^k has root g.
  std::pair<Word, Integer> root(Word const& w);

  // A word kept as a product of powers of words, for display.
  using PowerProduct = std::vector<std::pair<Word, Integer>>;

  Word evaluate(PowerProduct const& p);

  // Renders p as "b^2*(b*c*d)^-2*c^2", writing proper powers of a word as
  // powers of its root.
  std::string to_string(PowerProduct const& p, Alphabet const& alphabet);

}  // namespace lpnq
