#include "fkmm/abelian.hpp"
#include "fkmm/errors.hpp"

#include <algorithm>
#include <sstream>

namespace fkmm {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(Errc::BadArgument, "ragged matrix literal");
        for (long long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const std::vector<BigInt>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw Error(Errc::BadArgument, "matrix shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& x = (*this)(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += x * o(k, j);
        }
    return r;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row(std::size_t i, std::size_t j, const BigInt& f) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += f * (*this)(j, c);
}

void IntMatrix::add_col(std::size_t i, std::size_t j, const BigInt& f) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) += f * (*this)(r, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
}

std::string IntMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

// Fraction-free Bareiss elimination.
BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw Error(Errc::BadArgument, "determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

SmithForm smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SmithForm r{IntMatrix::identity(m), A, IntMatrix::identity(n)};
    IntMatrix& D = r.D;

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // smallest |entry| in the trailing block, first in row-major order on ties
            std::size_t pi = m, pj = n;
            BigInt best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) == 0) continue;
                    BigInt v = abs(D(i, j));
                    if (pi == m || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == m) return r;

            D.swap_rows(t, pi);
            r.U.swap_rows(t, pi);
            D.swap_cols(t, pj);
            r.V.swap_cols(t, pj);

            bool dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                BigInt q = D(i, t) / D(t, t);
                D.add_row(i, t, -q);
                r.U.add_row(i, t, -q);
                if (D(i, t) != 0) dirty = true;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                BigInt q = D(t, j) / D(t, t);
                D.add_col(j, t, -q);
                r.V.add_col(j, t, -q);
                if (D(t, j) != 0) dirty = true;
            }
            if (dirty) continue;

            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            D.add_row(t, bad, 1);
            r.U.add_row(t, bad, 1);
        }
        if (D(t, t) < 0) {
            D.negate_row(t);
            r.U.negate_row(t);
        }
    }
    return r;
}

AbelianGroup AbelianGroup::free(int rank, std::optional<int> scale) {
    return from_invariants(rank, {}, scale);
}

AbelianGroup AbelianGroup::cyclic(const BigInt& n) {
    if (n == 0) return free(1);
    return from_invariants(0, {n});
}

AbelianGroup AbelianGroup::from_invariants(int free_rank, const std::vector<BigInt>& orders,
                                           std::optional<int> scale) {
    if (free_rank < 0) throw Error(Errc::BadArgument, "negative free rank");
    AbelianGroup g;
    g.free_rank_ = free_rank;
    std::vector<BigInt> nonzero;
    for (const auto& o : orders) {
        if (o == 0)
            ++g.free_rank_;
        else
            nonzero.push_back(abs(o));
    }
    if (!nonzero.empty()) {
        SmithForm s = smith_normal_form(IntMatrix::diagonal(nonzero));
        for (std::size_t i = 0; i < nonzero.size(); ++i)
            if (s.D(i, i) > 1) g.torsion_.push_back(s.D(i, i));
    }
    return g.with_scale(scale);
}

AbelianGroup AbelianGroup::with_scale(std::optional<int> scale) const {
    AbelianGroup g = *this;
    if (scale && *scale <= 0) throw Error(Errc::BadArgument, "embedding scale must be positive");
    g.scale_ = (free_rank_ > 0 && scale && *scale != 1) ? scale : std::nullopt;
    return g;
}

std::string AbelianGroup::str() const {
    if (is_trivial()) return "0";
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < torsion_.size();) {
        std::size_t k = i;
        while (k < torsion_.size() && torsion_[k] == torsion_[i]) ++k;
        std::string s = "Z_" + torsion_[i].str();
        if (k - i > 1) s += "^" + std::to_string(k - i);
        parts.push_back(s);
        i = k;
    }
    if (free_rank_ > 0) {
        std::string z = scale_ ? std::to_string(*scale_) + "Z" : "Z";
        if (free_rank_ == 1)
            parts.push_back(z);
        else
            parts.push_back((scale_ ? "(" + z + ")" : z) + "^" + std::to_string(free_rank_));
    }
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " (+) " : "") + parts[i];
    return out;
}

AbelianGroup group_from_presentation(const IntMatrix& relations, std::size_t generators) {
    if (relations.cols() != generators)
        throw Error(Errc::BadArgument, "relation matrix must have one column per generator");
    SmithForm s = smith_normal_form(relations);
    std::vector<BigInt> orders;
    std::size_t rank = 0;
    for (std::size_t i = 0; i < std::min(relations.rows(), generators); ++i) {
        if (s.D(i, i) == 0) break;
        ++rank;
        orders.push_back(s.D(i, i));
    }
    return AbelianGroup::from_invariants(static_cast<int>(generators - rank), orders);
}

AbelianGroup direct_sum(const AbelianGroup& g, const AbelianGroup& h) {
    std::vector<BigInt> orders = g.torsion();
    orders.insert(orders.end(), h.torsion().begin(), h.torsion().end());
    std::optional<int> scale;
    if (g.free_rank() == 0)
        scale = h.embedding_scale();
    else if (h.free_rank() == 0 || g.embedding_scale() == h.embedding_scale())
        scale = g.embedding_scale();
    return AbelianGroup::from_invariants(g.free_rank() + h.free_rank(), orders, scale);
}

namespace {

int parse_positive(const std::string& s, const std::string& whole) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit))
        throw Error(Errc::BadArgument, "malformed group string '" + whole + "'");
    return std::stoi(s);
}

}  // namespace

AbelianGroup parse_group(const std::string& text) {
    if (text == "0") return {};
    int free_rank = 0;
    std::optional<int> scale;
    std::vector<BigInt> orders;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(" (+) ", pos);
        std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() + 1 : next + 5;

        int mult = 1;
        std::string base = part;
        if (auto caret = part.rfind('^'); caret != std::string::npos) {
            mult = parse_positive(part.substr(caret + 1), text);
            base = part.substr(0, caret);
        }
        if (base.rfind("Z_", 0) == 0) {
            BigInt n(base.substr(2));
            for (int i = 0; i < mult; ++i) orders.push_back(n);
            continue;
        }
        if (base.size() > 2 && base.front() == '(' && base.back() == ')') base = base.substr(1, base.size() - 2);
        if (base.empty() || base.back() != 'Z') throw Error(Errc::BadArgument, "malformed group string '" + text + "'");
        if (base.size() > 1) scale = parse_positive(base.substr(0, base.size() - 1), text);
        free_rank += mult;
    }
    return AbelianGroup::from_invariants(free_rank, orders, scale);
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::UnsupportedSpace: return "UnsupportedSpace";
        case Errc::OddResolution: return "OddResolution";
        case Errc::UnsupportedDimension: return "UnsupportedDimension";
        case Errc::BadSelector: return "BadSelector";
        case Errc::NoTRDirection: return "NoTRDirection";
        case Errc::GapClosed: return "GapClosed";
        case Errc::RankMismatch: return "RankMismatch";
        case Errc::NotAntisymmetric: return "NotAntisymmetric";
        case Errc::NotAdmissible: return "NotAdmissible";
        case Errc::NumericalInconsistency: return "NumericalInconsistency";
        case Errc::NoIsolatedFixedPoints: return "NoIsolatedFixedPoints";
        case Errc::NotFree: return "NotFree";
        case Errc::OddChernParity: return "OddChernParity";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownSymbol: return "UnknownSymbol";
        case Errc::ArityError: return "ArityError";
        case Errc::BadModelFile: return "BadModelFile";
        case Errc::BadArgument: return "BadArgument";
    }
    return "Error";
}

}  // namespace fkmm
