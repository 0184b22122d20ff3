#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace fkmm {

using BigInt = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const std::vector<BigInt>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    BigInt& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const BigInt& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const = default;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    // row_i += f * row_j
    void add_row(std::size_t i, std::size_t j, const BigInt& f);
    void add_col(std::size_t i, std::size_t j, const BigInt& f);
    void negate_row(std::size_t i);

    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BigInt> a_;
};

BigInt determinant(const IntMatrix& m);

struct SmithForm {
    IntMatrix U, D, V;
};

// U*A*V = D with U, V unimodular and D a non-negative divisibility chain.
SmithForm smith_normal_form(const IntMatrix& A);

class AbelianGroup {
public:
    AbelianGroup() = default;

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup free(int rank, std::optional<int> scale = std::nullopt);
    static AbelianGroup cyclic(const BigInt& n);
    // Any list of orders is accepted and brought into a divisibility chain; orders 1 are dropped.
    static AbelianGroup from_invariants(int free_rank, const std::vector<BigInt>& orders,
                                        std::optional<int> scale = std::nullopt);

    int free_rank() const { return free_rank_; }
    const std::vector<BigInt>& torsion() const { return torsion_; }
    std::optional<int> embedding_scale() const { return scale_; }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    AbelianGroup with_scale(std::optional<int> scale) const;

    bool operator==(const AbelianGroup& o) const = default;
    bool isomorphic(const AbelianGroup& o) const {
        return free_rank_ == o.free_rank_ && torsion_ == o.torsion_;
    }

    // "0", "Z", "Z_2^4 (+) Z^2", "(2Z)^2", ...
    std::string str() const;

private:
    int free_rank_ = 0;
    std::vector<BigInt> torsion_;
    std::optional<int> scale_;
};

AbelianGroup group_from_presentation(const IntMatrix& relations, std::size_t generators);
AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h);

// Inverse of AbelianGroup::str for canonical strings (used by the JSON round-trip).
AbelianGroup parse_group(const std::string& s);

}  // namespace fkmm
