#pragma once

#include "fkmm/abelian.hpp"

#include <string>

namespace fkmm {

// Fixed-point set of an involutive sphere or torus, described symbolically.
struct FixedSet {
    int components = 0;       // number of connected components
    int component_dim = -1;   // -1 when empty
    std::string shape;        // "point", "circle", "S^2", "T^2", ...

    bool empty() const { return components == 0; }
    bool isolated() const { return components > 0 && component_dim == 0; }
    std::string str() const;
};

// S^{p,q}: unit sphere of R^p (+) R^q with the involution flipping the last q coordinates.
// T^{a,b,c}: (S^{2,0})^a x (S^{1,1})^b x (S^{0,2})^c.
class InvolutiveSpace {
public:
    enum class Kind { Sphere, Torus };

    static InvolutiveSpace sphere(int p, int q);
    static InvolutiveSpace torus(int a, int b, int c);
    // "S:p,q" or "T:a,b,c"
    static InvolutiveSpace parse(const std::string& s);

    Kind kind() const { return kind_; }
    bool is_sphere() const { return kind_ == Kind::Sphere; }
    bool is_torus() const { return kind_ == Kind::Torus; }
    int p() const { return x_; }
    int q() const { return y_; }
    int a() const { return x_; }
    int b() const { return y_; }
    int c() const { return z_; }

    int dimension() const;
    bool is_empty() const;
    bool is_free() const { return fixed_set().empty(); }
    FixedSet fixed_set() const;
    // T^{a,b,c} with c >= 2 becomes T^{a+c-1,b,1}; everything else is returned unchanged.
    InvolutiveSpace normalized() const;

    std::string str() const;
    bool operator==(const InvolutiveSpace&) const = default;

private:
    InvolutiveSpace(Kind k, int x, int y, int z) : kind_(k), x_(x), y_(y), z_(z) {}
    Kind kind_;
    int x_, y_, z_;
};

// Only the parity of j matters.
AbelianGroup point_cohomology(int k, int j);
AbelianGroup free_sphere_cohomology(int d, int k, int j);
AbelianGroup tr_sphere_cohomology(int d, int k, int j);
AbelianGroup sphere_cohomology(const InvolutiveSpace& sphere, int k, int j);
AbelianGroup torus_cohomology(const InvolutiveSpace& torus, int k, int j);
AbelianGroup cohomology(const InvolutiveSpace& space, int k, int j);

// H^2_{Z2}(X | X^tau, Z(1)) for the cataloged spaces with a fixed point.
AbelianGroup relative_h2(const InvolutiveSpace& space);

struct ClassificationResult {
    enum class Status { Empty, Unique, Group };

    InvolutiveSpace space = InvolutiveSpace::sphere(0, 0);
    int rank = 0;
    Status status = Status::Empty;
    AbelianGroup group;
    int coset_offset = 0;        // 1 for the "2Z+1" coset of odd rank on S^{0,3}
    bool product_bundle = true;  // false for the odd-rank unique classes on free spaces
    std::string invariant_name;  // "c1", "FKMM", "FKMM+c1"
    bool complete = true;

    // Group part only: "Z_2^4", "2Z+1", "EMPTY", "0 (unique, trivial)".
    std::string value_str() const;
    // "S:0,3 rank=2m -> 2Z via c1 (FKMM bijective)"
    std::string str() const;
    bool operator==(const ClassificationResult&) const = default;
};

ClassificationResult classify(const InvolutiveSpace& space, int rank);

}  // namespace fkmm
