#include "lpnq/nq.hpp"

#include <algorithm>
#include <stdexcept>

namespace lpnq {

  PcWord to_pc_word(Vector const& v) {
    PcWord w;
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) {
        w.emplace_back(i, v[i]);
      }
    }
    return w;
  }

  Vector to_vector(PcWord const& w, size_t n) {
    Vector v(n, 0);
    for (auto const& [g, e] : w) {
      v.at(g) += e;
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // NilpotentPresentation
  ////////////////////////////////////////////////////////////////////////

  size_t NilpotentPresentation::add_generator(size_t  weight,
                                              Integer relative_order) {
    if (_central_from != size()) {
      throw std::logic_error(
          "non-central generators must precede the central ones");
    }
    if (relative_order < 0) {
      throw std::invalid_argument("negative relative order");
    }
    size_t const i = size();
    _comm.emplace_back(i);
    _weight.push_back(weight);
    _order.push_back(std::move(relative_order));
    _power.emplace_back();
    _central_from = size();
    return i;
  }

  size_t NilpotentPresentation::add_central_generator(size_t weight) {
    _weight.push_back(weight);
    _order.push_back(0);
    _power.emplace_back();
    return size() - 1;
  }

  size_t NilpotentPresentation::nilpotency_class() const {
    return _weight.empty() ? 0
                           : *std::max_element(_weight.begin(), _weight.end());
  }

  PcWord const& NilpotentPresentation::commutator(size_t j, size_t i) const {
    static PcWord const trivial;
    if (i >= j) {
      throw std::invalid_argument("commutator relations need j > i");
    }
    if (central(j)) {
      return trivial;
    }
    return _comm[j][i];
  }

  namespace {
    void check_tail(PcWord const& w, size_t after, size_t n) {
      for (size_t k = 0; k < w.size(); ++k) {
        if (w[k].first <= after || w[k].first >= n || w[k].second == 0
            || (k > 0 && w[k - 1].first >= w[k].first)) {
          throw std::invalid_argument(
              "relation right hand sides must be normal words in later "
              "generators");
        }
      }
    }
  }  // namespace

  void NilpotentPresentation::set_power(size_t i, PcWord w) {
    if (!finite(i)) {
      throw std::invalid_argument("power relation for an infinite generator");
    }
    check_tail(w, i, size());
    _power[i] = std::move(w);
  }

  void NilpotentPresentation::set_commutator(size_t j, size_t i, PcWord w) {
    if (i >= j || central(j)) {
      throw std::invalid_argument("invalid commutator relation index");
    }
    check_tail(w, j, size());
    _comm[j][i] = std::move(w);
  }

  ////////////////////////////////////////////////////////////////////////
  // Collector
  ////////////////////////////////////////////////////////////////////////

  Collector::Collector(NilpotentPresentation p) : _p(std::move(p)) {
    size_t const n  = _p.size();
    size_t const cf = _p.central_from();
    _power.resize(n);
    for (size_t i = 0; i < n; ++i) {
      if (_p.finite(i)) {
        _power[i] = to_vector(_p.power(i), n);
      }
    }
    _conj.resize(cf);
    _conj_inv.resize(cf);
    for (size_t k = 0; k < cf; ++k) {
      _conj[k].resize(k);
      _conj_inv[k].resize(k);
      for (size_t i = 0; i < k; ++i) {
        PcWord w = {{k, 1}};
        auto const& c = _p.commutator(k, i);
        w.insert(w.end(), c.begin(), c.end());
        _conj[k][i] = std::move(w);
      }
    }
    // a_k^{a_i^-1} = a_k * (c^-1)^{a_i^-1} where c = [a_k, a_i]; conjugation
    // by a_i^-1 on later generators is known by the time it is needed.
    for (size_t i = cf; i-- > 0;) {
      std::vector<Vector> images(cf);
      for (size_t k = cf; k-- > i + 1;) {
        Vector c    = to_vector(_p.commutator(k, i), n);
        Vector z    = apply_map(images, i + 1, inverse(c));
        Vector v    = generator(k);
        mul(v, z);
        images[k]      = v;
        _conj_inv[k][i] = to_pc_word(v);
      }
    }
  }

  Vector Collector::generator(size_t i, Integer const& e) const {
    Vector v = identity();
    mul_gen(v, i, e);
    return v;
  }

  void Collector::add_power(Vector& v, size_t i, Integer const& e) const {
    if (!_p.finite(i)) {
      v[i] += e;
      return;
    }
    Integer const& o = _p.relative_order(i);
    Integer        t = v[i] + e;
    Integer        q = floor_div(t, o);
    v[i]             = t - q * o;
    if (q != 0) {
      mul_word_pow(v, _p.power(i), q);
    }
  }

  void Collector::step(Vector& v, size_t i, int sign) const {
    size_t const        cf = _p.central_from();
    std::vector<size_t> ks;
    Vector              s;
    for (size_t k = i + 1; k < cf; ++k) {
      if (v[k] != 0) {
        ks.push_back(k);
        s.push_back(v[k]);
        v[k] = 0;
      }
    }
    add_power(v, i, sign);
    for (size_t t = 0; t < ks.size(); ++t) {
      mul_word_pow(
          v, sign > 0 ? _conj[ks[t]][i] : _conj_inv[ks[t]][i], s[t]);
    }
  }

  void Collector::mul_gen(Vector& v, size_t i, Integer const& e) const {
    if (e == 0) {
      return;
    }
    size_t const cf = _p.central_from();
    if (i >= cf) {
      v[i] += e;
      return;
    }
    size_t k = i + 1;
    while (k < cf && v[k] == 0) {
      ++k;
    }
    if (k == cf) {
      add_power(v, i, e);
      return;
    }
    int const sign = e > 0 ? 1 : -1;
    if (abs(e) <= 8) {
      for (int t = 0; t < abs(e); ++t) {
        step(v, i, sign);
      }
      return;
    }
    // Conjugation by a_i^e on the later generators, by repeated squaring.
    Vector suffix(v.size(), 0);
    for (; k < cf; ++k) {
      std::swap(suffix[k], v[k]);
    }
    std::vector<Vector> base(cf), result(cf);
    for (size_t g = i + 1; g < cf; ++g) {
      base[g]   = to_vector(sign > 0 ? _conj[g][i] : _conj_inv[g][i], size());
      result[g] = generator(g);
    }
    Integer q = abs(e);
    while (true) {
      if ((q & 1) != 0) {
        for (size_t g = i + 1; g < cf; ++g) {
          result[g] = apply_map(base, i + 1, result[g]);
        }
      }
      q >>= 1;
      if (q == 0) {
        break;
      }
      std::vector<Vector> sq(cf);
      for (size_t g = i + 1; g < cf; ++g) {
        sq[g] = apply_map(base, i + 1, base[g]);
      }
      base = std::move(sq);
    }
    add_power(v, i, e);
    mul(v, apply_map(result, i + 1, suffix));
  }

  void Collector::mul(Vector& v, Vector const& x) const {
    for (size_t g = 0; g < x.size(); ++g) {
      if (x[g] != 0) {
        mul_gen(v, g, x[g]);
      }
    }
  }

  void Collector::mul(Vector& v, PcWord const& x) const {
    for (auto const& [g, e] : x) {
      mul_gen(v, g, e);
    }
  }

  void Collector::mul_word_pow(Vector&       v,
                               PcWord const& w,
                               Integer const& q) const {
    if (q == 0 || w.empty()) {
      return;
    }
    if (q == 1) {
      mul(v, w);
    } else {
      mul(v, pow(to_vector(w, size()), q));
    }
  }

  Vector Collector::inverse(Vector const& x) const {
    Vector r = identity();
    for (size_t g = x.size(); g-- > 0;) {
      if (x[g] != 0) {
        mul_gen(r, g, -x[g]);
      }
    }
    return r;
  }

  Vector Collector::pow(Vector const& x, Integer q) const {
    Vector base = q < 0 ? inverse(x) : x;
    q           = abs(q);
    if (q == 1) {
      return base;
    }
    Vector result = identity();
    while (q > 0) {
      if ((q & 1) != 0) {
        mul(result, base);
      }
      q >>= 1;
      if (q > 0) {
        Vector b2 = base;
        mul(b2, base);
        base = std::move(b2);
      }
    }
    return result;
  }

  Vector Collector::commutator(Vector const& u, Vector const& v) const {
    Vector r = inverse(u);
    mul(r, inverse(v));
    mul(r, u);
    mul(r, v);
    return r;
  }

  Vector Collector::collect(std::span<Syllable const> w) const {
    Vector v = identity();
    for (auto const& s : w) {
      if (s.gen >= size()) {
        throw std::invalid_argument("collect: generator index out of range");
      }
      mul_gen(v, s.gen, s.exp);
    }
    return v;
  }

  Vector Collector::apply_map(std::vector<Vector> const& images,
                              size_t                     from,
                              Vector const&              x) const {
    size_t const cf = _p.central_from();
    Vector       r  = identity();
    for (size_t g = 0; g < x.size(); ++g) {
      if (x[g] == 0) {
        continue;
      }
      if (g < from) {
        throw std::logic_error("apply_map: generator outside the domain");
      }
      if (g >= cf) {
        r[g] += x[g];
      } else if (x[g] == 1) {
        mul(r, images[g]);
      } else {
        mul(r, pow(images[g], x[g]));
      }
    }
    return r;
  }

  Vector collect(NilpotentPresentation const& p, std::span<Syllable const> w) {
    return Collector(p).collect(w);
  }

  Vector QuotientMap::operator()(Collector const& col, Word const& w) const {
    Vector v = col.identity();
    for (auto const& s : w.syllables()) {
      if (s.exp == 1) {
        col.mul(v, images.at(s.gen));
      } else {
        col.mul(v, col.pow(images.at(s.gen), s.exp));
      }
    }
    return v;
  }

  ////////////////////////////////////////////////////////////////////////
  // Induced endomorphisms and lower central factors
  ////////////////////////////////////////////////////////////////////////

  namespace {
    Vector evaluate(Collector const&           col,
                    std::vector<Vector> const& images,
                    Vector const&              x) {
      Vector r = col.identity();
      for (size_t g = 0; g < x.size(); ++g) {
        if (x[g] != 0) {
          col.mul(r, col.pow(images[g], x[g]));
        }
      }
      return r;
    }
  }  // namespace

  std::vector<Vector> induce_endomorphism(NilpotentQuotient const& q,
                                          FreeEndomorphism const&  phi) {
    auto const&  p = q.presentation;
    size_t const n = p.size();
    if (phi.size() != q.map.images.size()) {
      throw std::invalid_argument(
          "endomorphism and quotient are over different free groups");
    }
    Collector           col(p);
    std::vector<Vector> images(n);
    for (size_t g = 0; g < n; ++g) {
      auto const& d = q.definitions.at(g);
      images[g]     = d.image ? q.map(col, phi.image(d.x))
                              : col.commutator(images[d.j], images[d.i]);
    }
    auto fail = [](std::string const& what) {
      throw NonInvariantError("the endomorphism does not induce a map on "
                              "the quotient ("
                              + what + ")");
    };
    for (size_t x = 0; x < phi.size(); ++x) {
      if (q.map(col, phi.image(x)) != evaluate(col, images, q.map.images[x])) {
        fail("generator images disagree");
      }
    }
    for (size_t i = 0; i < n; ++i) {
      if (p.finite(i)
          && col.pow(images[i], p.relative_order(i))
                 != evaluate(col, images, to_vector(p.power(i), n))) {
        fail("power relation violated");
      }
      for (size_t j = i + 1; j < n; ++j) {
        if (col.commutator(images[j], images[i])
            != evaluate(col, images, to_vector(p.commutator(j, i), n))) {
          fail("commutator relation violated");
        }
      }
    }
    return images;
  }

  std::vector<AbelianInvariants> lcs_factors(NilpotentPresentation const& p) {
    std::vector<AbelianInvariants> out;
    size_t                         first = 0;
    for (size_t w = 1; w <= p.nilpotency_class(); ++w) {
      size_t last = first;
      while (last < p.size() && p.weight(last) == w) {
        ++last;
      }
      size_t const  k = last - first;
      IntegerMatrix rel(0, k);
      for (size_t g = first; g < last; ++g) {
        if (!p.finite(g)) {
          continue;
        }
        Vector row(k, 0);
        row[g - first] = p.relative_order(g);
        for (auto const& [h, e] : p.power(g)) {
          if (h < last) {
            row[h - first] -= e;
          }
        }
        rel.append_row(row);
      }
      out.push_back(smith_invariants(rel, k));
      first = last;
    }
    return out;
  }

}  // namespace lpnq
