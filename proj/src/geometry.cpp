#include "fkmm/geometry.hpp"
#include "fkmm/errors.hpp"

#include <cmath>
#include <numbers>

namespace fkmm {

std::string CycleSelector::label(int n) const {
    if (whole_sphere) return "S2";
    std::string s = "k" + std::to_string(dir1 + 1) + "k" + std::to_string(dir2 + 1);
    const int other = 3 - dir1 - dir2;
    if (n > 0 && other >= 0 && other <= 2 && other != dir1 && other != dir2) {
        std::string v = offset == 0 ? "0" : (2 * offset == n ? "pi" : std::to_string(offset) + "/" + std::to_string(n) + "*2pi");
        s += "@k" + std::to_string(other + 1) + "=" + v;
    }
    return s;
}

FixedPointSet Grid::fixed_points() const {
    FixedPointSet f;
    for (std::size_t i = 0; i < size(); ++i)
        if (tau(i) == i) f.points.push_back(i);
    const FixedSet fs = space().fixed_set();
    if (fs.empty())
        f.structure = "empty";
    else if (fs.component_dim == 0)
        f.structure = "isolated";
    else if (fs.component_dim == 1)
        f.structure = "circle";
    else
        f.structure = "surface";
    return f;
}

TorusGrid::TorusGrid(const InvolutiveSpace& space, int n) : space_(space), n_(n) {
    if (!space.is_torus()) throw Error(Errc::UnsupportedSpace, space.str() + " is not a torus");
    const int d = space.dimension();
    if (d < 1 || d > 3) throw Error(Errc::UnsupportedDimension, "torus grids exist for dimension 1..3, got " + std::to_string(d));
    if (n % 2 != 0) throw Error(Errc::OddResolution, "grid size must be even, got " + std::to_string(n));
    if (n < 8) throw Error(Errc::OddResolution, "grid size must be at least 8, got " + std::to_string(n));
    factors_.insert(factors_.end(), space.a(), Factor::Trivial);
    factors_.insert(factors_.end(), space.b(), Factor::TR);
    factors_.insert(factors_.end(), space.c(), Factor::Free);
    size_ = 1;
    for (int i = 0; i < d; ++i) size_ *= static_cast<std::size_t>(n);
}

std::size_t TorusGrid::index(const std::array<int, 3>& m) const {
    std::size_t idx = 0;
    for (int i = 0; i < dim(); ++i) idx = idx * n_ + static_cast<std::size_t>(((m[i] % n_) + n_) % n_);
    return idx;
}

std::array<int, 3> TorusGrid::multi_index(std::size_t idx) const {
    std::array<int, 3> m{0, 0, 0};
    for (int i = dim() - 1; i >= 0; --i) {
        m[i] = static_cast<int>(idx % n_);
        idx /= n_;
    }
    return m;
}

std::size_t TorusGrid::tau(std::size_t i) const {
    auto m = multi_index(i);
    for (int d = 0; d < dim(); ++d) {
        switch (factors_[d]) {
            case Factor::Trivial: break;
            case Factor::TR: m[d] = -m[d]; break;
            case Factor::Free: m[d] += n_ / 2; break;
        }
    }
    return index(m);
}

std::vector<double> TorusGrid::coordinates(std::size_t i) const {
    auto m = multi_index(i);
    std::vector<double> k(dim());
    for (int d = 0; d < dim(); ++d) k[d] = 2.0 * std::numbers::pi * m[d] / n_;
    return k;
}

std::vector<std::string> TorusGrid::coordinate_names() const {
    std::vector<std::string> names;
    for (int d = 0; d < dim(); ++d) names.push_back("k" + std::to_string(d + 1));
    return names;
}

std::string TorusGrid::point_label(std::size_t i) const {
    auto m = multi_index(i);
    std::string s = "(";
    for (int d = 0; d < dim(); ++d) {
        if (d) s += ",";
        if (m[d] == 0)
            s += "0";
        else if (2 * m[d] == n_)
            s += "pi";
        else
            s += std::to_string(m[d]) + "/" + std::to_string(n_) + "*2pi";
    }
    return s + ")";
}

void TorusGrid::check_selector(const CycleSelector& s) const {
    if (s.whole_sphere) throw Error(Errc::BadSelector, "a torus has no whole-sphere cycle");
    if (dim() < 2) throw Error(Errc::BadSelector, "a 1D torus has no 2D cycles");
    if (s.dir1 < 0 || s.dir2 >= dim() || s.dir1 >= s.dir2)
        throw Error(Errc::BadSelector, "directions must satisfy 0 <= dir1 < dir2 < d");
    if (s.offset < 0 || s.offset >= n_) throw Error(Errc::BadSelector, "offset out of range");
    if (dim() == 2 && s.offset != 0) throw Error(Errc::BadSelector, "a 2-torus has no offset direction");
}

std::vector<Loop> TorusGrid::plaquettes(const CycleSelector& s) const {
    check_selector(s);
    const int other = 3 - s.dir1 - s.dir2;
    std::vector<Loop> out;
    out.reserve(static_cast<std::size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
            std::array<int, 3> m{0, 0, 0};
            if (dim() == 3) m[other] = s.offset;
            auto at = [&](int da, int db) {
                auto q = m;
                q[s.dir1] = a + da;
                q[s.dir2] = b + db;
                return index(q);
            };
            out.push_back({at(0, 0), at(1, 0), at(1, 1), at(0, 1)});
        }
    return out;
}

HalfDomain TorusGrid::half_domain(const CycleSelector& s) const {
    check_selector(s);
    const int other = 3 - s.dir1 - s.dir2;
    if (dim() == 3) {
        std::array<int, 3> m{0, 0, 0};
        m[other] = s.offset;
        std::array<int, 3> t = multi_index(tau(index(m)));
        if (t[other] != s.offset) throw Error(Errc::BadSelector, "the selected plane is not tau-invariant");
    }
    // split along dir2 when it is TR, otherwise along dir1
    int split, along;
    if (factors_[s.dir2] == Factor::TR) {
        split = s.dir2;
        along = s.dir1;
    } else if (factors_[s.dir1] == Factor::TR) {
        split = s.dir1;
        along = s.dir2;
    } else {
        throw Error(Errc::NoTRDirection, "the selected plane has no TR direction");
    }
    const bool split_second = split == s.dir2;

    auto at = [&](int ms, int ma) {
        std::array<int, 3> m{0, 0, 0};
        if (dim() == 3) m[other] = s.offset;
        m[split] = ms;
        m[along] = ma;
        return index(m);
    };

    HalfDomain h;
    const int half = n_ / 2;
    for (int ms = 1; ms < half; ++ms)
        for (int ma = 0; ma < n_; ++ma) h.interior.push_back(at(ms, ma));
    for (int ms = 0; ms < half; ++ms)
        for (int ma = 0; ma < n_; ++ma) {
            // same orientation as plaquettes(s): first step along dir1, then along dir2
            if (split_second)
                h.plaquettes.push_back({at(ms, ma), at(ms, ma + 1), at(ms + 1, ma + 1), at(ms + 1, ma)});
            else
                h.plaquettes.push_back({at(ms, ma), at(ms + 1, ma), at(ms + 1, ma + 1), at(ms, ma + 1)});
        }
    Loop low, high;
    for (int ma = 0; ma < n_; ++ma) {
        low.push_back(at(0, ma));
        high.push_back(at(half, ma));
    }
    if (split_second)
        std::reverse(high.begin(), high.end());
    else
        std::reverse(low.begin(), low.end());
    h.boundary = {low, high};
    return h;
}

std::vector<CycleSelector> TorusGrid::cycles() const {
    if (dim() == 2) return {CycleSelector::plane(0, 1)};
    if (dim() == 3) return {CycleSelector::plane(0, 1), CycleSelector::plane(0, 2), CycleSelector::plane(1, 2)};
    return {};
}

std::vector<CycleSelector> TorusGrid::trim_planes() const {
    std::vector<CycleSelector> out;
    if (dim() != 3) return out;
    for (int normal = 0; normal < 3; ++normal) {
        int d1 = normal == 0 ? 1 : 0, d2 = normal == 2 ? 1 : 2;
        out.push_back(CycleSelector::plane(d1, d2, 0));
        out.push_back(CycleSelector::plane(d1, d2, n_ / 2));
    }
    return out;
}

std::string TorusGrid::describe() const {
    return space_.str() + " torus grid n=" + std::to_string(n_);
}

SphereGrid::SphereGrid(const InvolutiveSpace& space, int n_theta, int n_phi)
    : space_(space), nt_(n_theta), np_(n_phi) {
    if (space == InvolutiveSpace::sphere(0, 3))
        inv_ = Involution::Antipodal;
    else if (space == InvolutiveSpace::sphere(1, 2) || space == InvolutiveSpace::sphere(1, 3))
        inv_ = Involution::TR;
    else if (space == InvolutiveSpace::sphere(2, 1))
        inv_ = Involution::Axial;
    else
        throw Error(Errc::UnsupportedSpace, "sphere grids exist for S:0,3, S:1,2, S:1,3 (restricted) and S:2,1; got " + space.str());
    if (n_theta % 2 != 0 || n_phi % 2 != 0)
        throw Error(Errc::OddResolution, "sphere resolution must be even in both directions");
    if (n_theta < 8 || n_phi < 8) throw Error(Errc::OddResolution, "sphere resolution must be at least 8");
}

std::size_t SphereGrid::index(int ring, int j) const {
    return static_cast<std::size_t>(ring - 1) * np_ + static_cast<std::size_t>(((j % np_) + np_) % np_);
}

std::size_t SphereGrid::tau(std::size_t i) const {
    const int ring = static_cast<int>(i / np_) + 1, j = static_cast<int>(i % np_);
    switch (inv_) {
        case Involution::Antipodal: return index(nt_ - ring, j + np_ / 2);
        case Involution::TR: return index(nt_ - ring, -j);
        case Involution::Axial: return index(nt_ - ring, j);
    }
    return i;
}

std::vector<double> SphereGrid::coordinates(std::size_t i) const {
    const int ring = static_cast<int>(i / np_) + 1, j = static_cast<int>(i % np_);
    const double th = std::numbers::pi * ring / nt_, ph = 2.0 * std::numbers::pi * j / np_;
    std::vector<double> x{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
    // exact zeros keep parity checks at the symmetric points free of rounding noise
    if (2 * ring == nt_) x[2] = 0.0;
    if (j == 0 || 2 * j == np_) x[1] = 0.0;
    if (4 * j == np_ || 4 * j == 3 * np_) x[0] = 0.0;
    if (space_.q() == 3 && space_.p() == 1) x.push_back(0.0);
    return x;
}

std::vector<std::string> SphereGrid::coordinate_names() const {
    std::vector<std::string> names{"x0", "x1", "x2"};
    if (space_.q() == 3 && space_.p() == 1) names.push_back("x3");
    return names;
}

std::string SphereGrid::point_label(std::size_t i) const {
    if (inv_ == Involution::TR && tau(i) == i) {
        const int j = static_cast<int>(i % np_);
        return j == 0 ? "x0=+1" : "x0=-1";
    }
    const int ring = static_cast<int>(i / np_) + 1, j = static_cast<int>(i % np_);
    return "(theta=" + std::to_string(ring) + "/" + std::to_string(nt_) + "*pi,phi=" + std::to_string(j) + "/" +
           std::to_string(np_) + "*2pi)";
}

std::vector<Loop> SphereGrid::plaquettes(const CycleSelector& s) const {
    if (!s.whole_sphere) throw Error(Errc::BadSelector, "sphere grids only carry the whole-sphere cycle");
    std::vector<Loop> out;
    // outward orientation: theta first, then phi
    Loop north, south;
    for (int j = 0; j < np_; ++j) {
        north.push_back(index(1, j));
        south.push_back(index(nt_ - 1, -j));
    }
    out.push_back(north);
    for (int ring = 1; ring + 1 < nt_; ++ring)
        for (int j = 0; j < np_; ++j)
            out.push_back({index(ring, j), index(ring + 1, j), index(ring + 1, j + 1), index(ring, j + 1)});
    out.push_back(south);
    return out;
}

HalfDomain SphereGrid::half_domain(const CycleSelector& s) const {
    if (!s.whole_sphere) throw Error(Errc::BadSelector, "sphere grids only carry the whole-sphere cycle");
    if (inv_ != Involution::TR) throw Error(Errc::NoTRDirection, "half domains need the TR involution");
    // northern hemisphere; its boundary is the equator, a tau-invariant great circle through both fixed points
    HalfDomain h;
    const int eq = nt_ / 2;
    Loop north, equator;
    for (int j = 0; j < np_; ++j) {
        north.push_back(index(1, j));
        equator.push_back(index(eq, j));
    }
    h.plaquettes.push_back(north);
    for (int ring = 1; ring < eq; ++ring)
        for (int j = 0; j < np_; ++j) {
            h.interior.push_back(index(ring, j));
            h.plaquettes.push_back({index(ring, j), index(ring + 1, j), index(ring + 1, j + 1), index(ring, j + 1)});
        }
    h.boundary = {equator};
    return h;
}

std::string SphereGrid::describe() const {
    return space_.str() + " sphere grid " + std::to_string(nt_) + "x" + std::to_string(np_);
}

std::shared_ptr<TorusGrid> build_torus_grid(const InvolutiveSpace& space, int n) {
    return std::make_shared<TorusGrid>(space, n);
}

std::shared_ptr<SphereGrid> build_sphere_grid(const InvolutiveSpace& space, int n_theta, int n_phi) {
    return std::make_shared<SphereGrid>(space, n_theta, n_phi);
}

std::shared_ptr<Grid> build_grid(const InvolutiveSpace& space, int n) {
    if (space.is_torus()) return build_torus_grid(space, n);
    // the circles S^{2,0}, S^{1,1}, S^{0,2} are the 1D tori
    if (space.dimension() == 1) {
        if (space.p() == 2) return build_torus_grid(InvolutiveSpace::torus(1, 0, 0), n);
        if (space.p() == 1) return build_torus_grid(InvolutiveSpace::torus(0, 1, 0), n);
        return build_torus_grid(InvolutiveSpace::torus(0, 0, 1), n);
    }
    return build_sphere_grid(space, n, n);
}

}  // namespace fkmm
