#pragma once

// Exact integer linear algebra on row lattices: Hermite and Smith normal
// forms, membership with witnesses and an incremental lattice used by the
// spinning loops.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lpnq/integer.hpp"

namespace lpnq {

  class IntegerMatrix {
   public:
    IntegerMatrix() = default;
    IntegerMatrix(size_t rows, size_t cols);

    static IntegerMatrix from_rows(std::vector<Vector> const& rows,
                                   size_t                     cols);
    static IntegerMatrix identity(size_t n);

    size_t rows() const noexcept {
      return _rows;
    }
    size_t cols() const noexcept {
      return _cols;
    }

    Integer& operator()(size_t r, size_t c) {
      return _data[r * _cols + c];
    }
    Integer const& operator()(size_t r, size_t c) const {
      return _data[r * _cols + c];
    }

    Vector              row(size_t r) const;
    std::vector<Vector> to_rows() const;
    void                append_row(Vector const& v);

    bool operator==(IntegerMatrix const&) const = default;

   private:
    size_t  _rows = 0;
    size_t  _cols = 0;
    Vector  _data;
  };

  // Row vector times matrix.
  Vector        operator*(Vector const& v, IntegerMatrix const& m);
  IntegerMatrix operator*(IntegerMatrix const& a, IntegerMatrix const& b);

  // Row Hermite normal form: echelon, positive pivots, entries above a pivot
  // reduced into [0, pivot). Equal row lattices give identical bases.
  struct HNFBasis {
    IntegerMatrix       basis;
    std::vector<size_t> pivots;
    // When requested: basis = transform * input rows.
    std::optional<IntegerMatrix> transform;

    size_t rank() const noexcept {
      return basis.rows();
    }
    size_t dimension() const noexcept {
      return basis.cols();
    }
  };

  HNFBasis hnf(IntegerMatrix const& m, bool with_transform = false);

  // Coefficients c with c * b.basis = v, or nullopt when v is not in the
  // lattice. Throws std::invalid_argument on a dimension mismatch.
  std::optional<Vector> membership(Vector const& v, HNFBasis const& b);

  struct ExtensionReport {
    bool rank_grew = false;
    // Rows of the old basis that are not rows of the new one, each with its
    // coefficients over the new basis.
    std::vector<size_t> rewritten;
    std::vector<Vector> witnesses;
    // Coefficients of the added vector over the new basis.
    Vector added;
    // New basis rows as combinations of [old basis rows; v].
    IntegerMatrix transform;
  };

  std::pair<HNFBasis, ExtensionReport> extend_basis(HNFBasis const& b,
                                                    Vector const&   v);

  // Isomorphism type of a finitely generated abelian group.
  struct AbelianInvariants {
    size_t               free_rank = 0;
    std::vector<Integer> torsion;  // d_1 | d_2 | ..., all >= 2

    bool trivial() const noexcept {
      return free_rank == 0 && torsion.empty();
    }
    bool finite() const noexcept {
      return free_rank == 0;
    }
    // Order of the group, or nullopt when infinite.
    std::optional<Integer> order() const;
    // (p, rank) when the group is a nontrivial elementary abelian p-group.
    std::optional<std::pair<Integer, size_t>> elementary() const;

    // "Z^r x Z_{d1} x ... x Z_{dk}", "0" for the trivial group.
    std::string to_string() const;

    bool operator==(AbelianInvariants const&) const = default;
  };

  // Builds canonical invariants from arbitrary diagonal entries.
  AbelianInvariants abelian_invariants(std::vector<Integer> diagonal,
                                       size_t               free_rank);

  // Invariants of Z^ambient_rank / rowlattice(m).
  AbelianInvariants smith_invariants(IntegerMatrix const& m,
                                     size_t               ambient_rank);

  // Incrementally grown row lattice in Z^n kept in echelon form. Reduction
  // against the echelon rows yields the canonical representative of a coset
  // (entries at pivot columns in [0, pivot)), so no full HNF pass is needed
  // until basis() is requested.
  class Lattice {
   public:
    explicit Lattice(size_t dim = 0);

    size_t dimension() const noexcept {
      return _dim;
    }
    size_t rank() const noexcept {
      return _rank;
    }

    // Returns true iff v was not already in the lattice.
    bool insert(Vector v);
    bool contains(Vector const& v) const;
    Vector reduce(Vector v) const;

    // Pivot of the row at column c, or 0 when column c has no pivot.
    Integer pivot(size_t c) const;
    bool    has_pivot(size_t c) const {
      return _row_at[c].has_value();
    }

    // The echelon row with pivot in column c; throws std::out_of_range if
    // there is none.
    Vector const& row(size_t c) const;
    // Echelon rows in increasing pivot order.
    std::vector<Vector> rows() const;
    HNFBasis            basis() const;

    // Z^n / L
    AbelianInvariants quotient_invariants() const;

   private:
    void reduce_tail(Vector& v, size_t from) const;

    size_t                             _dim;
    size_t                             _rank = 0;
    std::vector<std::optional<Vector>> _row_at;
  };

  // Grows l to the smallest lattice containing l and the seeds that every
  // matrix maps into itself (v -> v * m), assuming l itself is mapped into
  // itself. Work proceeds breadth first; vectors are reduced modulo the
  // current lattice before they are queued.
  void spin(Lattice&                          l,
            std::vector<Vector> const&        seeds,
            std::vector<IntegerMatrix> const& matrices);

  // Invariants of upper / lower, where lower is a sublattice of upper.
  AbelianInvariants subquotient_invariants(Lattice const& upper,
                                           Lattice const& lower);

}  // namespace lpnq
