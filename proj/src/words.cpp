#include "lpnq/words.hpp"

#include <stdexcept>
#include <unordered_set>

#include "lpnq/zlinalg.hpp"

namespace lpnq {

  ExtendedGcd extended_gcd(Integer const& a, Integer const& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
      Integer q   = old_r / r;
      Integer tmp = old_r - q * r;
      old_r       = r;
      r           = tmp;
      tmp         = old_s - q * s;
      old_s       = s;
      s           = tmp;
      tmp         = old_t - q * t;
      old_t       = t;
      t           = tmp;
    }
    if (old_r < 0) {
      return {-old_r, -old_s, -old_t};
    }
    return {old_r, old_s, old_t};
  }

  ////////////////////////////////////////////////////////////////////////
  // Alphabet
  ////////////////////////////////////////////////////////////////////////

  Alphabet::Alphabet(std::vector<std::string> names) : _names(std::move(names)) {
    if (_names.empty()) {
      throw std::invalid_argument("an alphabet needs at least one generator");
    }
    std::unordered_set<std::string> seen;
    for (auto const& n : _names) {
      if (!seen.insert(n).second) {
        throw std::invalid_argument("duplicate generator name \"" + n + "\"");
      }
    }
  }

  std::optional<size_t> Alphabet::index_of(std::string_view name) const {
    for (size_t i = 0; i < _names.size(); ++i) {
      if (_names[i] == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Word
  ////////////////////////////////////////////////////////////////////////

  void Word::push(size_t gen, Integer const& exp) {
    if (exp == 0) {
      return;
    }
    if (!_syl.empty() && _syl.back().gen == gen) {
      _syl.back().exp += exp;
      if (_syl.back().exp == 0) {
        _syl.pop_back();
      }
    } else {
      _syl.push_back({gen, exp});
    }
  }

  Word Word::reduce(std::span<Syllable const> raw) {
    Word w;
    for (auto const& s : raw) {
      w.push(s.gen, s.exp);
    }
    return w;
  }

  Word Word::generator(size_t gen, Integer exp) {
    Word w;
    w.push(gen, exp);
    return w;
  }

  Integer Word::length() const {
    Integer n = 0;
    for (auto const& s : _syl) {
      n += abs(s.exp);
    }
    return n;
  }

  Word& Word::operator*=(Word const& that) {
    if (&that == this) {
      Word copy = that;
      return *this *= copy;
    }
    for (auto const& s : that._syl) {
      push(s.gen, s.exp);
    }
    return *this;
  }

  Word Word::operator*(Word const& that) const {
    Word w = *this;
    w *= that;
    return w;
  }

  Word Word::inverse() const {
    Word w;
    w._syl.reserve(_syl.size());
    for (auto it = _syl.rbegin(); it != _syl.rend(); ++it) {
      w._syl.push_back({it->gen, -it->exp});
    }
    return w;
  }

  Word Word::pow(Integer n) const {
    Word base = *this;
    if (n < 0) {
      base = base.inverse();
      n    = -n;
    }
    Word result;
    while (n > 0) {
      if ((n & 1) != 0) {
        result *= base;
      }
      n >>= 1;
      if (n > 0) {
        base *= base;
      }
    }
    return result;
  }

  Word Word::conjugate(Word const& by) const {
    return by.inverse() * *this * by;
  }

  Word commutator(Word const& u, Word const& v) {
    return u.inverse() * v.inverse() * u * v;
  }

  Vector exponent_vector(Word const& w, size_t n) {
    Vector v(n, 0);
    for (auto const& s : w.syllables()) {
      if (s.gen >= n) {
        throw std::invalid_argument("word uses a generator outside Z^"
                                    + std::to_string(n));
      }
      v[s.gen] += s.exp;
    }
    return v;
  }

  std::string to_string(Word const& w, Alphabet const& alphabet) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& s : w.syllables()) {
      if (!out.empty()) {
        out += '*';
      }
      out += alphabet.name(s.gen);
      if (s.exp != 1) {
        out += '^';
        out += s.exp.str();
      }
    }
    return out;
  }

  std::pair<Word, Integer> root(Word const& w) {
    auto const& syl = w.syllables();
    size_t const n  = syl.size();
    if (n == 1) {
      return {Word::generator(syl[0].gen), syl[0].exp};
    }
    for (size_t p = 2; p < n; ++p) {
      if (n % p != 0) {
        continue;
      }
      bool periodic = true;
      for (size_t i = p; i < n && periodic; ++i) {
        periodic = syl[i] == syl[i - p];
      }
      if (periodic) {
        return {Word::reduce(std::span(syl).first(p)), Integer(n / p)};
      }
    }
    return {w, Integer(1)};
  }

  Word evaluate(PowerProduct const& p) {
    Word out;
    for (auto const& [w, e] : p) {
      out *= w.pow(e);
    }
    return out;
  }

  std::string to_string(PowerProduct const& p, Alphabet const& alphabet) {
    std::string out;
    for (auto const& [w, e] : p) {
      if (w.empty() || e == 0) {
        continue;
      }
      auto [u, k] = root(w);
      Integer total = k * e;
      if (!out.empty()) {
        out += '*';
      }
      if (total == 1) {
        out += to_string(u, alphabet);
      } else if (u.syllables().size() == 1) {
        out += to_string(u.pow(total), alphabet);
      } else {
        out += "(" + to_string(u, alphabet) + ")^" + total.str();
      }
    }
    return out.empty() ? "1" : out;
  }

  ////////////////////////////////////////////////////////////////////////
  // FreeEndomorphism
  ////////////////////////////////////////////////////////////////////////

  FreeEndomorphism::FreeEndomorphism(std::vector<Word> images)
      : _images(std::move(images)) {
    for (auto const& w : _images) {
      for (auto const& s : w.syllables()) {
        if (s.gen >= _images.size()) {
          throw std::invalid_argument(
              "endomorphism image uses a generator outside the alphabet");
        }
      }
    }
  }

  FreeEndomorphism FreeEndomorphism::identity(size_t n) {
    std::vector<Word> images;
    images.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      images.push_back(Word::generator(i));
    }
    return FreeEndomorphism(std::move(images));
  }

  Word FreeEndomorphism::apply(Word const& w) const {
    Word out;
    for (auto const& s : w.syllables()) {
      if (s.gen >= _images.size()) {
        throw std::invalid_argument(
            "word and endomorphism are over different alphabets");
      }
      out *= _images[s.gen].pow(s.exp);
    }
    return out;
  }

  IntegerMatrix FreeEndomorphism::matrix() const {
    size_t        n = _images.size();
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
      Vector row = exponent_vector(_images[i], n);
      for (size_t j = 0; j < n; ++j) {
        m(i, j) = row[j];
      }
    }
    return m;
  }

  FreeEndomorphism compose(FreeEndomorphism const& phi,
                           FreeEndomorphism const& psi) {
    if (phi.size() != psi.size()) {
      throw std::invalid_argument(
          "cannot compose endomorphisms of different free groups");
    }
    std::vector<Word> images;
    images.reserve(phi.size());
    for (auto const& w : phi.images()) {
      images.push_back(psi.apply(w));
    }
    return FreeEndomorphism(std::move(images));
  }

}  // namespace lpnq
