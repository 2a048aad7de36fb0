#include "lpnq/zlinalg.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lpnq {

  namespace {
    void axpy(Vector& y, Integer const& a, Vector const& x, size_t from = 0) {
      for (size_t i = from; i < x.size(); ++i) {
        if (x[i] != 0) {
          y[i] += a * x[i];
        }
      }
    }

    // (u, v) <- (s u + t v, (a/g) v - (b/g) u) where a = u[c], b = v[c].
    // The transformation is unimodular and clears v[c].
    void gcd_combine(Vector& u, Vector& v, size_t c) {
      Integer const a = u[c], b = v[c];
      auto [g, s, t]  = extended_gcd(a, b);
      Integer ag = a / g, bg = b / g;
      for (size_t i = 0; i < u.size(); ++i) {
        Integer const ui = u[i], vi = v[i];
        u[i]             = s * ui + t * vi;
        v[i]             = ag * vi - bg * ui;
      }
    }
  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // IntegerMatrix
  ////////////////////////////////////////////////////////////////////////

  IntegerMatrix::IntegerMatrix(size_t rows, size_t cols)
      : _rows(rows), _cols(cols), _data(rows * cols, 0) {}

  IntegerMatrix IntegerMatrix::from_rows(std::vector<Vector> const& rows,
                                         size_t                     cols) {
    IntegerMatrix m(0, cols);
    for (auto const& r : rows) {
      m.append_row(r);
    }
    return m;
  }

  IntegerMatrix IntegerMatrix::identity(size_t n) {
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) {
      m(i, i) = 1;
    }
    return m;
  }

  Vector IntegerMatrix::row(size_t r) const {
    return Vector(_data.begin() + r * _cols, _data.begin() + (r + 1) * _cols);
  }

  std::vector<Vector> IntegerMatrix::to_rows() const {
    std::vector<Vector> out;
    out.reserve(_rows);
    for (size_t r = 0; r < _rows; ++r) {
      out.push_back(row(r));
    }
    return out;
  }

  void IntegerMatrix::append_row(Vector const& v) {
    if (v.size() != _cols) {
      throw std::invalid_argument("row has " + std::to_string(v.size())
                                  + " entries, expected "
                                  + std::to_string(_cols));
    }
    _data.insert(_data.end(), v.begin(), v.end());
    ++_rows;
  }

  Vector operator*(Vector const& v, IntegerMatrix const& m) {
    if (v.size() != m.rows()) {
      throw std::invalid_argument("vector-matrix dimension mismatch");
    }
    Vector out(m.cols(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) {
        continue;
      }
      for (size_t j = 0; j < m.cols(); ++j) {
        if (m(i, j) != 0) {
          out[j] += v[i] * m(i, j);
        }
      }
    }
    return out;
  }

  IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b) {
    IntegerMatrix out(0, b.cols());
    for (size_t r = 0; r < a.rows(); ++r) {
      out.append_row(a.row(r) * b);
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Hermite normal form
  ////////////////////////////////////////////////////////////////////////

  HNFBasis hnf(IntegerMatrix const& m, bool with_transform) {
    size_t const nrows = m.rows(), ncols = m.cols();
    // Each working row is [entries | transform].
    size_t const        width = ncols + (with_transform ? nrows : 0);
    std::vector<Vector> a;
    a.reserve(nrows);
    for (size_t r = 0; r < nrows; ++r) {
      Vector row = m.row(r);
      if (with_transform) {
        row.resize(width, 0);
        row[ncols + r] = 1;
      }
      a.push_back(std::move(row));
    }

    std::vector<size_t> pivots;
    size_t              r = 0;
    for (size_t c = 0; c < ncols && r < nrows; ++c) {
      for (size_t i = r + 1; i < nrows; ++i) {
        if (a[i][c] == 0) {
          continue;
        }
        if (a[r][c] == 0) {
          std::swap(a[r], a[i]);
          continue;
        }
        if (a[i][c] % a[r][c] == 0) {
          axpy(a[i], -(a[i][c] / a[r][c]), a[r], c);
        } else {
          gcd_combine(a[r], a[i], c);
        }
      }
      if (a[r][c] == 0) {
        continue;
      }
      if (a[r][c] < 0) {
        for (auto& x : a[r]) {
          x = -x;
        }
      }
      for (size_t k = 0; k < r; ++k) {
        Integer q = floor_div(a[k][c], a[r][c]);
        if (q != 0) {
          axpy(a[k], -q, a[r], c);
        }
      }
      pivots.push_back(c);
      ++r;
    }

    HNFBasis out;
    out.pivots = std::move(pivots);
    out.basis  = IntegerMatrix(0, ncols);
    if (with_transform) {
      out.transform = IntegerMatrix(0, nrows);
    }
    for (size_t k = 0; k < r; ++k) {
      out.basis.append_row(Vector(a[k].begin(), a[k].begin() + ncols));
      if (with_transform) {
        out.transform->append_row(Vector(a[k].begin() + ncols, a[k].end()));
      }
    }
    return out;
  }

  std::optional<Vector> membership(Vector const& v, HNFBasis const& b) {
    if (v.size() != b.dimension()) {
      throw std::invalid_argument("membership: vector has dimension "
                                  + std::to_string(v.size())
                                  + " but the lattice lives in Z^"
                                  + std::to_string(b.dimension()));
    }
    Vector w = v;
    Vector coeffs(b.rank(), 0);
    for (size_t k = 0; k < b.rank(); ++k) {
      size_t const   p   = b.pivots[k];
      Integer const& piv = b.basis(k, p);
      if (w[p] % piv != 0) {
        return std::nullopt;
      }
      coeffs[k] = w[p] / piv;
      if (coeffs[k] != 0) {
        axpy(w, -coeffs[k], b.basis.row(k), p);
      }
    }
    if (!is_zero(w)) {
      return std::nullopt;
    }
    return coeffs;
  }

  std::pair<HNFBasis, ExtensionReport> extend_basis(HNFBasis const& b,
                                                    Vector const&   v) {
    if (v.size() != b.dimension()) {
      throw std::invalid_argument("extend_basis: dimension mismatch");
    }
    IntegerMatrix stacked = b.basis;
    stacked.append_row(v);
    HNFBasis nb = hnf(stacked, true);

    ExtensionReport report;
    report.rank_grew = nb.rank() > b.rank();
    report.transform = *nb.transform;
    report.added     = *membership(v, nb);
    auto new_rows    = nb.basis.to_rows();
    for (size_t k = 0; k < b.rank(); ++k) {
      Vector old = b.basis.row(k);
      if (std::find(new_rows.begin(), new_rows.end(), old) == new_rows.end()) {
        report.rewritten.push_back(k);
        report.witnesses.push_back(*membership(old, nb));
      }
    }
    return {std::move(nb), std::move(report)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Abelian invariants and Smith normal form
  ////////////////////////////////////////////////////////////////////////

  std::optional<Integer> AbelianInvariants::order() const {
    if (free_rank != 0) {
      return std::nullopt;
    }
    Integer n = 1;
    for (auto const& d : torsion) {
      n *= d;
    }
    return n;
  }

  std::optional<std::pair<Integer, size_t>>
  AbelianInvariants::elementary() const {
    if (free_rank != 0 || torsion.empty()) {
      return std::nullopt;
    }
    Integer const p = torsion.front();
    if (torsion.back() != p) {
      return std::nullopt;
    }
    for (Integer d = 2; d * d <= p; ++d) {
      if (p % d == 0) {
        return std::nullopt;
      }
    }
    return std::make_pair(p, torsion.size());
  }

  std::string AbelianInvariants::to_string() const {
    if (trivial()) {
      return "0";
    }
    std::string out;
    if (free_rank > 0) {
      out = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
    }
    for (auto const& d : torsion) {
      if (!out.empty()) {
        out += " x ";
      }
      out += "Z_" + d.str();
    }
    return out;
  }

  AbelianInvariants abelian_invariants(std::vector<Integer> diagonal,
                                       size_t               free_rank) {
    std::vector<Integer> d;
    for (auto& x : diagonal) {
      Integer y = abs(x);
      if (y == 0) {
        ++free_rank;
      } else if (y != 1) {
        d.push_back(std::move(y));
      }
    }
    for (size_t i = 0; i < d.size(); ++i) {
      for (size_t j = i + 1; j < d.size(); ++j) {
        Integer g = gcd(d[i], d[j]);
        Integer l = d[i] / g * d[j];
        d[i]      = g;
        d[j]      = l;
      }
    }
    AbelianInvariants out;
    out.free_rank = free_rank;
    for (auto& x : d) {
      if (x != 1) {
        out.torsion.push_back(std::move(x));
      }
    }
    return out;
  }

  AbelianInvariants smith_invariants(IntegerMatrix const& m,
                                     size_t               ambient_rank) {
    if (m.cols() != ambient_rank) {
      throw std::invalid_argument("smith_invariants: matrix has "
                                  + std::to_string(m.cols())
                                  + " columns, ambient rank is "
                                  + std::to_string(ambient_rank));
    }
    // The Hermite form is square-ish and usually has many unit pivots.
    std::vector<Vector> a = hnf(m).basis.to_rows();
    size_t const        r = a.size(), n = ambient_rank;

    std::vector<Integer> diag;
    for (size_t t = 0; t < r; ++t) {
      while (true) {
        // smallest nonzero entry of the trailing block
        size_t  bi = r, bj = n;
        Integer best;
        for (size_t i = t; i < r; ++i) {
          for (size_t j = t; j < n; ++j) {
            if (a[i][j] != 0 && (bi == r || abs(a[i][j]) < best)) {
              best = abs(a[i][j]);
              bi   = i;
              bj   = j;
              if (best == 1) {
                break;
              }
            }
          }
          if (bi != r && best == 1) {
            break;
          }
        }
        if (bi == r) {
          return abelian_invariants(std::move(diag), n - diag.size());
        }
        std::swap(a[t], a[bi]);
        if (bj != t) {
          for (size_t i = t; i < r; ++i) {
            std::swap(a[i][t], a[i][bj]);
          }
        }
        bool clean = true;
        for (size_t i = t + 1; i < r; ++i) {
          if (a[i][t] != 0) {
            Integer q = a[i][t] / a[t][t];
            axpy(a[i], -q, a[t], t);
            clean = clean && a[i][t] == 0;
          }
        }
        for (size_t j = t + 1; j < n; ++j) {
          if (a[t][j] != 0) {
            Integer q = a[t][j] / a[t][t];
            for (size_t i = t; i < r; ++i) {
              if (a[i][t] != 0) {
                a[i][j] -= q * a[i][t];
              }
            }
            clean = clean && a[t][j] == 0;
          }
        }
        if (clean) {
          break;
        }
      }
      diag.push_back(a[t][t]);
    }
    return abelian_invariants(std::move(diag), n - diag.size());
  }

  ////////////////////////////////////////////////////////////////////////
  // Lattice
  ////////////////////////////////////////////////////////////////////////

  Lattice::Lattice(size_t dim) : _dim(dim), _row_at(dim) {}

  void Lattice::reduce_tail(Vector& v, size_t from) const {
    for (size_t p = from; p < _dim; ++p) {
      if (v[p] != 0 && _row_at[p]) {
        Vector const& row = *_row_at[p];
        Integer       q   = floor_div(v[p], row[p]);
        if (q != 0) {
          axpy(v, -q, row, p);
        }
      }
    }
  }

  Vector Lattice::reduce(Vector v) const {
    if (v.size() != _dim) {
      throw std::invalid_argument("lattice reduction: dimension mismatch");
    }
    reduce_tail(v, 0);
    return v;
  }

  bool Lattice::contains(Vector const& v) const {
    return is_zero(reduce(v));
  }

  bool Lattice::insert(Vector v) {
    if (v.size() != _dim) {
      throw std::invalid_argument("lattice insertion: dimension mismatch");
    }
    bool grew = false;
    for (size_t p = 0; p < _dim; ++p) {
      if (v[p] == 0) {
        continue;
      }
      if (!_row_at[p]) {
        if (v[p] < 0) {
          for (auto& x : v) {
            x = -x;
          }
        }
        reduce_tail(v, p + 1);
        _row_at[p] = std::move(v);
        ++_rank;
        return true;
      }
      Vector& row = *_row_at[p];
      if (v[p] % row[p] == 0) {
        axpy(v, -(v[p] / row[p]), row, p);
      } else {
        gcd_combine(row, v, p);
        if (row[p] < 0) {
          for (auto& x : row) {
            x = -x;
          }
        }
        reduce_tail(row, p + 1);
        grew = true;
      }
    }
    return grew;
  }

  Integer Lattice::pivot(size_t c) const {
    return _row_at[c] ? (*_row_at[c])[c] : Integer(0);
  }

  Vector const& Lattice::row(size_t c) const {
    if (!_row_at.at(c)) {
      throw std::out_of_range("lattice has no pivot in column "
                              + std::to_string(c));
    }
    return *_row_at[c];
  }

  std::vector<Vector> Lattice::rows() const {
    std::vector<Vector> out;
    out.reserve(_rank);
    for (auto const& r : _row_at) {
      if (r) {
        out.push_back(*r);
      }
    }
    return out;
  }

  HNFBasis Lattice::basis() const {
    return hnf(IntegerMatrix::from_rows(rows(), _dim));
  }

  AbelianInvariants Lattice::quotient_invariants() const {
    return smith_invariants(IntegerMatrix::from_rows(rows(), _dim), _dim);
  }

  void spin(Lattice&                          l,
            std::vector<Vector> const&        seeds,
            std::vector<IntegerMatrix> const& matrices) {
    std::deque<Vector> queue;
    auto               offer = [&](Vector const& v) {
      Vector r = l.reduce(v);
      if (!is_zero(r)) {
        l.insert(r);
        queue.push_back(std::move(r));
      }
    };
    for (auto const& s : seeds) {
      offer(s);
    }
    while (!queue.empty()) {
      Vector v = std::move(queue.front());
      queue.pop_front();
      for (auto const& m : matrices) {
        offer(v * m);
      }
    }
  }

  AbelianInvariants subquotient_invariants(Lattice const& upper,
                                           Lattice const& lower) {
    if (upper.dimension() != lower.dimension()) {
      throw std::invalid_argument("subquotient: dimension mismatch");
    }
    auto const          up = upper.rows();
    std::vector<size_t> piv;
    for (auto const& r : up) {
      piv.push_back(static_cast<size_t>(
          std::find_if(r.begin(), r.end(), [](auto const& x) { return x != 0; })
          - r.begin()));
    }
    IntegerMatrix coords(0, up.size());
    for (auto w : lower.rows()) {
      Vector c(up.size(), 0);
      for (size_t k = 0; k < up.size(); ++k) {
        size_t p = piv[k];
        if (w[p] % up[k][p] != 0) {
          throw std::invalid_argument("subquotient: not a sublattice");
        }
        c[k] = w[p] / up[k][p];
        if (c[k] != 0) {
          axpy(w, -c[k], up[k], p);
        }
      }
      if (!is_zero(w)) {
        throw std::invalid_argument("subquotient: not a sublattice");
      }
      coords.append_row(c);
    }
    return smith_invariants(coords, up.size());
  }

}  // namespace lpnq
