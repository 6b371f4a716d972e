#include "strengthlab/subspace.hpp"

#include <stdexcept>

#include "strengthlab/errors.hpp"

namespace strengthlab {

Subspace make_subspace_prechecked(Matrix basis, std::vector<std::size_t> pivots) {
    Subspace s;
    s.ambient_ = basis.cols();
    s.basis_ = std::move(basis);
    s.pivots_ = std::move(pivots);
    return s;
}

Subspace Subspace::from_spanning_rows(const Matrix& rows) {
    std::vector<std::size_t> pivots;
    Matrix r = rref(rows, &pivots);
    Matrix basis(rows.field(), pivots.size(), rows.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        for (std::size_t j = 0; j < rows.cols(); ++j) basis.at(i, j) = r.at(i, j);
    return make_subspace_prechecked(std::move(basis), std::move(pivots));
}

Subspace Subspace::zero(FieldPtr field, std::size_t ambient) {
    return make_subspace_prechecked(Matrix(std::move(field), 0, ambient), {});
}

Subspace Subspace::whole(FieldPtr field, std::size_t ambient) {
    std::vector<std::size_t> pivots(ambient);
    for (std::size_t i = 0; i < ambient; ++i) pivots[i] = i;
    return make_subspace_prechecked(Matrix::identity(std::move(field), ambient), std::move(pivots));
}

bool Subspace::contains(const std::vector<std::uint32_t>& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("subspace: vector has wrong length");
    const Field& F = *field();
    std::vector<std::uint32_t> w = v;
    for (std::size_t i = 0; i < dim(); ++i) {
        std::uint32_t c = w[pivots_[i]];
        if (!c) continue;
        for (std::size_t j = 0; j < ambient_; ++j) w[j] = F.sub(w[j], F.mul(c, basis_.at(i, j)));
    }
    for (auto x : w)
        if (x) return false;
    return true;
}

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("subspace: ambient mismatch");
    for (std::size_t i = 0; i < other.dim(); ++i)
        if (!contains(other.basis_.row_vec(i))) return false;
    return true;
}

Subspace kernel(const Matrix& m) {
    std::vector<std::size_t> pivots;
    Matrix r = rref(m, &pivots);
    const Field& F = *m.field();
    std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;

    Matrix span(m.field(), n - pivots.size(), n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        span.at(k, j) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) span.at(k, pivots[i]) = F.neg(r.at(i, j));
        ++k;
    }
    return Subspace::from_spanning_rows(span);
}

Matrix complete_basis(const Subspace& w) {
    std::size_t n = w.ambient();
    std::vector<bool> is_pivot(n, false);
    for (auto p : w.pivots()) is_pivot[p] = true;
    Matrix c(w.field(), n, n);
    std::size_t r = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        c.at(r, j) = 1;
        ++r;
    }
    for (std::size_t i = 0; i < w.dim(); ++i)
        for (std::size_t j = 0; j < n; ++j) c.at(r + i, j) = w.basis().at(i, j);
    return c;
}

BigInt subspace_count(std::uint32_t n, std::uint32_t k, std::uint64_t q) {
    return gaussian_binomial(n, k, q);
}

std::vector<PivotBlock> subspace_blocks(std::uint32_t n, std::uint32_t k, std::uint64_t q) {
    std::vector<PivotBlock> blocks;
    if (k > n) return blocks;
    std::vector<std::uint32_t> comb(k);
    for (std::uint32_t i = 0; i < k; ++i) comb[i] = i;
    for (;;) {
        PivotBlock b;
        b.pivots = comb;
        std::vector<bool> is_pivot(n, false);
        for (auto p : comb) is_pivot[p] = true;
        for (std::uint32_t i = 0; i < k; ++i)
            for (std::uint32_t j = comb[i] + 1; j < n; ++j)
                if (!is_pivot[j]) b.frees.emplace_back(i, j);
        b.size = 1;
        for (std::size_t t = 0; t < b.frees.size(); ++t) b.size *= q;
        blocks.push_back(std::move(b));

        // next k-combination of {0..n-1} in lexicographic order
        if (k == 0) break;
        std::int64_t i = static_cast<std::int64_t>(k) - 1;
        while (i >= 0 && comb[i] == n - k + i) --i;
        if (i < 0) break;
        ++comb[i];
        for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
    return blocks;
}

void fill_subspace_basis(const PivotBlock& block, std::uint64_t offset, Matrix& out) {
    const std::uint64_t q = out.field()->q();
    std::size_t k = block.pivots.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < out.cols(); ++j) out.at(i, j) = 0;
    for (std::size_t i = 0; i < k; ++i) out.at(i, block.pivots[i]) = 1;
    // Base-q digits of the offset, most significant digit on the first free
    // position, so ascending offsets give lexicographic free-entry tuples.
    for (std::size_t t = block.frees.size(); t-- > 0;) {
        auto [r, c] = block.frees[t];
        out.at(r, c) = static_cast<std::uint32_t>(offset % q);
        offset /= q;
    }
}

SubspaceEnumerator::SubspaceEnumerator(FieldPtr field, std::uint32_t n, std::uint32_t codim,
                                       std::uint64_t budget)
    : field_(std::move(field)), n_(n), dim_(n - codim) {
    if (codim > n) throw std::invalid_argument("enumerate_subspaces: codim exceeds ambient dimension");
    total_ = subspace_count(n_, dim_, field_->q());
    if (total_ > budget)
        throw budget_exceeded_error("enumerate_subspaces: candidate count exceeds budget",
                                    total_.str(), budget);
    blocks_ = subspace_blocks(n_, dim_, field_->q());
    scratch_ = Matrix(field_, dim_, n_);
}

std::optional<Subspace> SubspaceEnumerator::next() {
    while (block_idx_ < blocks_.size() && offset_ >= blocks_[block_idx_].size) {
        ++block_idx_;
        offset_ = 0;
    }
    if (block_idx_ >= blocks_.size()) return std::nullopt;
    const PivotBlock& b = blocks_[block_idx_];
    fill_subspace_basis(b, offset_, scratch_);
    ++offset_;
    std::vector<std::size_t> pivots(b.pivots.begin(), b.pivots.end());
    return make_subspace_prechecked(scratch_, std::move(pivots));
}

}  // namespace strengthlab
