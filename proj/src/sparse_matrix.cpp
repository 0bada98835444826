#include "outlierlab/sparse_matrix.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace olab {

void SparseSymMatrix::finalize() {
    if (finalized_) return;
    for (auto& r : rows_) {
        std::sort(r.begin(), r.end(),
                  [](const Entry& a, const Entry& b) { return a.col < b.col; });
        for (std::size_t t = 1; t < r.size(); ++t)
            if (r[t].col == r[t - 1].col)
                throw std::invalid_argument("duplicate entry in sparse matrix row");
    }
    finalized_ = true;
}

double SparseSymMatrix::value(std::int64_t i, std::int64_t j) const {
    const auto& r = rows_[static_cast<std::size_t>(i)];
    auto it = std::lower_bound(r.begin(), r.end(), j, [](const Entry& e, std::int64_t c) {
        return e.col < c;
    });
    if (it != r.end() && it->col == j) return it->value;
    return 0.0;
}

std::int64_t SparseSymMatrix::nnz_upper() const {
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < n_; ++i)
        for (const auto& e : rows_[static_cast<std::size_t>(i)])
            if (e.col >= i) ++count;
    return count;
}

void SparseSymMatrix::write_text(std::ostream& os) const {
    os << "n " << n_ << " diag " << (diag_mode_ == DiagMode::zero ? "zero" : "iid") << "\n";
    char buf[64];
    for (std::int64_t i = 0; i < n_; ++i)
        for (const auto& e : rows_[static_cast<std::size_t>(i)])
            if (e.col >= i) {
                std::snprintf(buf, sizeof buf, "%lld %lld %.17g\n",
                              static_cast<long long>(i), static_cast<long long>(e.col),
                              e.value);
                os << buf;
            }
}

SparseSymMatrix SparseSymMatrix::read_text(std::istream& is) {
    std::string tag, diag_word;
    std::int64_t n = 0;
    if (!(is >> tag >> n >> diag_word) || tag != "n" || diag_word != "diag")
        throw std::runtime_error("bad matrix header");
    std::string mode_word;
    if (!(is >> mode_word) || (mode_word != "zero" && mode_word != "iid"))
        throw std::runtime_error("bad matrix diag mode");
    SparseSymMatrix m(n, mode_word == "zero" ? DiagMode::zero : DiagMode::iid);
    std::int64_t i, j;
    double v;
    while (is >> i >> j >> v) m.add_upper(i, j, v);
    m.finalize();
    return m;
}

void SparseSymMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(static_cast<std::size_t>(n_), 0.0);
    for (std::int64_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (const auto& e : rows_[static_cast<std::size_t>(i)])
            acc += e.value * x[static_cast<std::size_t>(e.col)];
        y[static_cast<std::size_t>(i)] = acc;
    }
}

} // namespace olab
