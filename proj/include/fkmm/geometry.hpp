#pragma once

#include "fkmm/cohomology.hpp"

#include <array>
#include <memory>
#include <tuple>
#include <string>
#include <vector>

namespace fkmm {

// A closed polygon of grid indices; the last vertex connects back to the first.
using Loop = std::vector<std::size_t>;

// Names a closed 2D surface inside a grid: the whole sphere, or the sub-torus spanned by
// directions (dir1, dir2) with the remaining direction held at `offset`.
struct CycleSelector {
    bool whole_sphere = false;
    int dir1 = 0, dir2 = 1;
    int offset = 0;

    static CycleSelector sphere() { return {true, 0, 0, 0}; }
    static CycleSelector plane(int d1, int d2, int offset = 0) { return {false, d1, d2, offset}; }
    std::string label(int n = 0) const;
    bool operator==(const CycleSelector&) const = default;
    bool operator<(const CycleSelector& o) const {
        return std::tie(whole_sphere, dir1, dir2, offset) < std::tie(o.whole_sphere, o.dir1, o.dir2, o.offset);
    }
};

// Effective domain for the Z2 computation: interior plaquettes of one half of a cycle and the
// tau-invariant boundary loops, oriented as the boundary of that half.
struct HalfDomain {
    std::vector<std::size_t> interior;
    std::vector<Loop> plaquettes;
    std::vector<Loop> boundary;
};

struct FixedPointSet {
    std::vector<std::size_t> points;
    std::string structure;  // "empty", "isolated", "circle", "surface"
};

class Grid {
public:
    virtual ~Grid() = default;

    virtual const InvolutiveSpace& space() const = 0;
    virtual std::size_t size() const = 0;
    virtual std::size_t tau(std::size_t i) const = 0;
    // Values of the coordinate symbols at index i, in the order of coordinate_names().
    virtual std::vector<double> coordinates(std::size_t i) const = 0;
    virtual std::vector<std::string> coordinate_names() const = 0;
    virtual std::string point_label(std::size_t i) const = 0;
    virtual std::vector<Loop> plaquettes(const CycleSelector& s) const = 0;
    virtual HalfDomain half_domain(const CycleSelector& s) const = 0;
    // Closed 2D cycles carrying the cohomology relevant to this space.
    virtual std::vector<CycleSelector> cycles() const = 0;
    virtual std::string describe() const = 0;

    FixedPointSet fixed_points() const;
};

class TorusGrid : public Grid {
public:
    enum class Factor { Trivial, TR, Free };

    TorusGrid(const InvolutiveSpace& space, int n);

    int dim() const { return static_cast<int>(factors_.size()); }
    int n() const { return n_; }
    const std::vector<Factor>& factors() const { return factors_; }
    std::size_t index(const std::array<int, 3>& m) const;
    std::array<int, 3> multi_index(std::size_t i) const;

    const InvolutiveSpace& space() const override { return space_; }
    std::size_t size() const override { return size_; }
    std::size_t tau(std::size_t i) const override;
    std::vector<double> coordinates(std::size_t i) const override;
    std::vector<std::string> coordinate_names() const override;
    std::string point_label(std::size_t i) const override;
    std::vector<Loop> plaquettes(const CycleSelector& s) const override;
    HalfDomain half_domain(const CycleSelector& s) const override;
    std::vector<CycleSelector> cycles() const override;
    std::string describe() const override;

    // The planes of a 3-torus through the TRIM: k_i = 0 and k_i = pi for each direction i.
    std::vector<CycleSelector> trim_planes() const;

private:
    void check_selector(const CycleSelector& s) const;

    InvolutiveSpace space_;
    int n_;
    std::vector<Factor> factors_;
    std::size_t size_;
};

// Latitude-longitude mesh on S^2 with rings theta_i = i*pi/n_theta (i = 1..n_theta-1), longitudes
// phi_j = 2*pi*j/n_phi, and two polar caps closing the surface. The S^{1,3} variant is the
// equatorial restriction x3 = 0 of the 3-sphere. As for S^{p,q} in general, tau flips the last q of
// the Cartesian coordinates x0, x1, x2 (x3).
class SphereGrid : public Grid {
public:
    enum class Involution { Antipodal, TR, Axial };

    SphereGrid(const InvolutiveSpace& space, int n_theta, int n_phi);

    Involution involution() const { return inv_; }
    int n_theta() const { return nt_; }
    int n_phi() const { return np_; }
    std::size_t index(int ring, int j) const;

    const InvolutiveSpace& space() const override { return space_; }
    std::size_t size() const override { return static_cast<std::size_t>(nt_ - 1) * np_; }
    std::size_t tau(std::size_t i) const override;
    std::vector<double> coordinates(std::size_t i) const override;
    std::vector<std::string> coordinate_names() const override;
    std::string point_label(std::size_t i) const override;
    std::vector<Loop> plaquettes(const CycleSelector& s) const override;
    HalfDomain half_domain(const CycleSelector& s) const override;
    std::vector<CycleSelector> cycles() const override { return {CycleSelector::sphere()}; }
    std::string describe() const override;

private:
    InvolutiveSpace space_;
    Involution inv_;
    int nt_, np_;
};

std::shared_ptr<TorusGrid> build_torus_grid(const InvolutiveSpace& space, int n);
std::shared_ptr<SphereGrid> build_sphere_grid(const InvolutiveSpace& space, int n_theta, int n_phi);
// Torus grid with n points per direction, or sphere grid with resolution (n, n).
std::shared_ptr<Grid> build_grid(const InvolutiveSpace& space, int n);

}  // namespace fkmm
