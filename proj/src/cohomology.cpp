#include "fkmm/cohomology.hpp"
#include "fkmm/errors.hpp"

#include <regex>

namespace fkmm {

namespace {

int parity(int j) { return ((j % 2) + 2) % 2; }

AbelianGroup Z() { return AbelianGroup::free(1); }
AbelianGroup Z2(int n = 1) { return AbelianGroup::from_invariants(0, std::vector<BigInt>(n, 2)); }

std::string torus_shape(int a) {
    if (a == 0) return "point";
    if (a == 1) return "circle";
    return "T^" + std::to_string(a);
}

}  // namespace

std::string FixedSet::str() const {
    if (empty()) return "empty";
    if (components == 1) return shape;
    return std::to_string(components) + " x " + shape;
}

InvolutiveSpace InvolutiveSpace::sphere(int p, int q) {
    if (p < 0 || q < 0) throw Error(Errc::BadArgument, "sphere indices must be non-negative");
    return {Kind::Sphere, p, q, 0};
}

InvolutiveSpace InvolutiveSpace::torus(int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0) throw Error(Errc::BadArgument, "torus indices must be non-negative");
    return {Kind::Torus, a, b, c};
}

InvolutiveSpace InvolutiveSpace::parse(const std::string& s) {
    static const std::regex sph(R"(S:(\d+),(\d+))"), tor(R"(T:(\d+),(\d+),(\d+))");
    std::smatch m;
    if (std::regex_match(s, m, sph)) return sphere(std::stoi(m[1]), std::stoi(m[2]));
    if (std::regex_match(s, m, tor)) return torus(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    throw Error(Errc::BadArgument, "space must look like S:p,q or T:a,b,c, got '" + s + "'");
}

int InvolutiveSpace::dimension() const {
    return is_sphere() ? x_ + y_ - 1 : x_ + y_ + z_;
}

bool InvolutiveSpace::is_empty() const {
    return is_sphere() ? x_ + y_ == 0 : x_ + y_ + z_ == 0;
}

FixedSet InvolutiveSpace::fixed_set() const {
    if (is_empty()) return {};
    if (is_sphere()) {
        // the fixed set of S^{p,q} is the unit sphere of R^p
        switch (x_) {
            case 0: return {};
            case 1: return {2, 0, "point"};
            case 2: return {1, 1, "circle"};
            default: return {1, x_ - 1, "S^" + std::to_string(x_ - 1)};
        }
    }
    if (z_ > 0) return {};
    return {1 << y_, x_, torus_shape(x_)};
}

InvolutiveSpace InvolutiveSpace::normalized() const {
    if (is_torus() && z_ >= 2) return torus(x_ + z_ - 1, y_, 1);
    return *this;
}

std::string InvolutiveSpace::str() const {
    if (is_sphere()) return "S:" + std::to_string(x_) + "," + std::to_string(y_);
    return "T:" + std::to_string(x_) + "," + std::to_string(y_) + "," + std::to_string(z_);
}

AbelianGroup point_cohomology(int k, int j) {
    if (k < 0) return {};
    if (parity(j) == 0) {
        if (k == 0) return Z();
        return k % 2 == 0 ? Z2() : AbelianGroup{};
    }
    return k % 2 == 1 ? Z2() : AbelianGroup{};
}

AbelianGroup free_sphere_cohomology(int d, int k, int j) {
    if (d < 0) throw Error(Errc::BadArgument, "sphere dimension must be non-negative");
    if (k < 0 || k > d) return {};
    if (parity(j) == 1) {
        if (k % 2 == 1) return k < d || d % 2 == 1 ? Z2() : AbelianGroup{};
        return k == d ? Z() : AbelianGroup{};
    }
    // untwisted: the orbit space is RP^d
    if (k == 0) return Z();
    if (k < d) return k % 2 == 0 ? Z2() : AbelianGroup{};
    return d % 2 == 1 ? Z() : Z2();
}

AbelianGroup tr_sphere_cohomology(int d, int k, int j) {
    return sphere_cohomology(InvolutiveSpace::sphere(1, d), k, j);
}

AbelianGroup sphere_cohomology(const InvolutiveSpace& s, int k, int j) {
    if (!s.is_sphere()) throw Error(Errc::BadArgument, "not a sphere");
    if (s.is_empty() || k < 0) return {};
    if (s.p() == 0) return free_sphere_cohomology(s.q() - 1, k, j);
    // A fixed point splits off a copy of the point; the top cell of S^{p,q} contributes
    // a copy shifted by the dimension and twisted by the q sign-flipped directions.
    const int d = s.dimension();
    return direct_sum(point_cohomology(k, j), point_cohomology(k - d, j - s.q()));
}

namespace {

// Peels circle factors off with the split Gysin sequences; the base is a point or S^{0,2}.
AbelianGroup torus_rec(int a, int b, int c, int k, int j) {
    if (k < 0) return {};
    if (a > 0) return direct_sum(torus_rec(a - 1, b, c, k, j), torus_rec(a - 1, b, c, k - 1, j));
    if (b > 0) return direct_sum(torus_rec(0, b - 1, c, k, j), torus_rec(0, b - 1, c, k - 1, j - 1));
    return c == 0 ? point_cohomology(k, j) : free_sphere_cohomology(1, k, j);
}

}  // namespace

AbelianGroup torus_cohomology(const InvolutiveSpace& t, int k, int j) {
    if (!t.is_torus()) throw Error(Errc::BadArgument, "not a torus");
    if (t.is_empty()) return {};
    const InvolutiveSpace n = t.normalized();
    return torus_rec(n.a(), n.b(), n.c(), k, j);
}

AbelianGroup cohomology(const InvolutiveSpace& space, int k, int j) {
    return space.is_sphere() ? sphere_cohomology(space, k, j) : torus_cohomology(space, k, j);
}

AbelianGroup relative_h2(const InvolutiveSpace& s) {
    auto unsupported = [&] {
        return Error(Errc::UnsupportedSpace,
                     "no relative H^2 known for " + s.str() + " (catalog: spheres p>=1, p+q<=4; tori T^{a,b,0}, a+b<=3)");
    };
    if (s.is_empty() || s.is_free() || s.dimension() > 3) throw unsupported();
    const auto two_z = [](int r) { return AbelianGroup::free(r, 2); };
    if (s.is_sphere()) {
        if (s.q() == 0) return {};
        switch (s.p()) {
            case 1: return s.q() >= 2 ? Z2() : AbelianGroup{};
            case 2: return s.q() == 1 ? two_z(1) : AbelianGroup{};
            case 3: return {};
        }
        throw unsupported();
    }
    const int a = s.a(), b = s.b();
    if (b == 0 || (a == 0 && b == 1)) return {};
    if (b == 1) return two_z(a);
    if (a == 0 && b == 2) return Z2();
    if (a == 1 && b == 2) return direct_sum(Z2(), two_z(2));
    if (a == 0 && b == 3) return Z2(4);
    throw unsupported();
}

std::string ClassificationResult::value_str() const {
    switch (status) {
        case Status::Empty: return "EMPTY";
        case Status::Unique:
            return product_bundle ? "0 (unique, trivial)" : "0 (unique, not a product bundle)";
        case Status::Group: break;
    }
    return group.str() + (coset_offset ? "+" + std::to_string(coset_offset) : "");
}

std::string ClassificationResult::str() const {
    std::string out = space.str() + " rank=" + (rank % 2 == 0 ? "2m" : "2m+1") + " -> " + value_str();
    if (status == Status::Group) out += " via " + invariant_name + " (FKMM bijective)";
    return out;
}

ClassificationResult classify(const InvolutiveSpace& space, int rank) {
    if (rank < 1) throw Error(Errc::BadArgument, "rank must be positive");
    if (space.dimension() > 3)
        throw Error(Errc::UnsupportedSpace, space.str() + " has dimension > 3, outside the cataloged range");

    ClassificationResult r;
    r.space = space;
    r.rank = rank;
    const bool odd = rank % 2 == 1;
    const FixedSet fixed = space.fixed_set();

    if (space.is_empty() || (odd && !fixed.empty())) return r;
    if (space.dimension() <= 1) {
        r.status = ClassificationResult::Status::Unique;
        r.product_bundle = !odd;
        return r;
    }

    r.status = ClassificationResult::Status::Group;
    if (!fixed.empty()) {
        r.group = relative_h2(space);
    } else if (space.is_sphere()) {
        // free spheres with d in {2,3}: S^{0,3} and S^{0,4}
        if (space.q() == 4 && odd) {
            r.status = ClassificationResult::Status::Empty;
            return r;
        }
        r.group = free_sphere_cohomology(space.dimension(), 2, 1).with_scale(2);
        if (space.q() == 3 && odd) r.coset_offset = 1;
    } else {
        r.group = torus_cohomology(space, 2, 1).with_scale(2);
    }

    const bool tors = !r.group.torsion().empty(), fr = r.group.free_rank() > 0;
    r.invariant_name = tors && fr ? "FKMM+c1" : (fr ? "c1" : "FKMM");
    return r;
}

}  // namespace fkmm
