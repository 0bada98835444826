#pragma once
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace olab {

enum class DiagMode { zero, iid };

// Symmetric n x n real matrix, compressed sparse rows with enforced symmetry.
// Built from upper-triangle triples; both (i,j) and (j,i) are stored so row
// scans see the full row.
class SparseSymMatrix {
public:
    struct Entry {
        std::int64_t col;
        double value;
    };

    SparseSymMatrix() = default;
    SparseSymMatrix(std::int64_t n, DiagMode diag_mode)
        : n_(n), diag_mode_(diag_mode), rows_(static_cast<std::size_t>(n)) {
        if (n < 2) throw std::invalid_argument("matrix size must be >= 2");
    }

    std::int64_t size() const { return n_; }
    DiagMode diag_mode() const { return diag_mode_; }

    // Insert an entry with i <= j (diagonal allowed only in iid mode).
    // Must be called before finalize(); duplicates are rejected at finalize.
    void add_upper(std::int64_t i, std::int64_t j, double value) {
        if (i > j) std::swap(i, j);
        if (i == j && diag_mode_ == DiagMode::zero)
            throw std::invalid_argument("diagonal entry in zero-diagonal matrix");
        if (j >= n_ || i < 0) throw std::out_of_range("entry index out of range");
        if (value == 0.0) return;
        rows_[static_cast<std::size_t>(i)].push_back({j, value});
        if (i != j) rows_[static_cast<std::size_t>(j)].push_back({i, value});
    }

    // Sort rows, check for duplicates. Idempotent.
    void finalize();

    const std::vector<Entry>& row(std::int64_t i) const {
        return rows_[static_cast<std::size_t>(i)];
    }

    double value(std::int64_t i, std::int64_t j) const;

    std::int64_t nnz_upper() const; // stored entries with i <= j

    // Text round-trip: header `n <n> diag <zero|iid>`, then `i j value` per
    // upper-triangle nonzero (0-indexed, 17 significant digits).
    void write_text(std::ostream& os) const;
    static SparseSymMatrix read_text(std::istream& is);

    // y = M x, with per-row left-to-right accumulation so the result is
    // bit-identical regardless of how rows are scheduled across threads.
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;

private:
    std::int64_t n_ = 0;
    DiagMode diag_mode_ = DiagMode::zero;
    std::vector<std::vector<Entry>> rows_;
    bool finalized_ = false;
};

} // namespace olab
