#pragma once

#include "fkmm/geometry.hpp"
#include "fkmm/models.hpp"

#include <complex>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace fkmm {

// Orthonormal frames of the occupied bundle at every grid point, with the antiunitary symmetry.
struct ProjectorField {
    std::shared_ptr<const Grid> grid;
    std::vector<CMatrix> frames;
    AntiUnitary theta;
    int rank = 0;
    GapReport gap;

    static ProjectorField from_model(const CliffordModel& model, std::shared_ptr<const Grid> grid,
                                     double rel_gap_tol = default_gap_tolerance());
};

// Key used for a cycle in reports: the plane position appears only on 3D tori ("k1k2@k3=pi").
std::string cycle_label(const Grid& g, const CycleSelector& c);

// Phase of det(W_1 ... W_L) around a loop, W_i = F(v_i)^* F(v_{i+1}); principal branch in (-pi, pi].
double plaquette_phase(const std::vector<CMatrix>& frames, const Loop& loop);
double link_phase(const CMatrix& a, const CMatrix& b);

// Block diagonal [[0,1],[-1,0]] of even size.
CMatrix symplectic_form(int rank);
// A frame of the same plane with frame^dagger Theta frame = J. The plane must be Theta invariant.
CMatrix kramers_frame(const CMatrix& frame, const AntiUnitary& theta);

inline constexpr double kAdmissiblePhase = 0.95 * 3.14159265358979323846;
inline constexpr double kIntegerTolerance = 1e-6;

struct ChernResult {
    int value = 0;
    double raw = 0;
    double max_phase = 0;
    bool admissible = true;
};

// Link-variable Chern number over the closed surface named by the selector.
// NotAdmissible when some plaquette phase reaches 0.95 pi, NumericalInconsistency when the sum
// is not within 1e-6 of an integer.
ChernResult chern_number(const ProjectorField& field, const CycleSelector& cycle);

struct SewingField {
    std::vector<CMatrix> w;  // w_ab(k) = <u_a(tau k), Theta u_b(k)>
    double max_unitarity_defect = 0;
    double max_antisymmetry_defect = 0;  // over fixed points
};

SewingField sewing(const ProjectorField& field);

// Pf(A) for antisymmetric 2x2 and 4x4 matrices; NotAntisymmetric when ||A + A^T|| > 1e-8.
std::complex<double> pfaffian(const CMatrix& A);

struct Z2Result {
    // "Z2" on 2D spaces; "strong", "weak1", "weak2", "weak3" on T^{0,3,0}
    std::map<std::string, int> indices;
    // Index on every TRIM plane that was evaluated, keyed by CycleSelector::label.
    std::map<std::string, int> planes;
    // A canonical sign map at the fixed points representing the class.
    std::map<std::string, int> signs;
    double max_phase = 0;
};

// Index on one 2D cycle by the half-domain method: boundary connection minus interior curvature, mod 2.
// The boundary gauge has frame^dagger Theta frame = J at the fixed points and F(tau k) = Theta F(k) J^-1
// on the rest of the boundary.
int half_domain_index(const ProjectorField& field, const CycleSelector& cycle, double* max_phase = nullptr);
Z2Result fkm_indices(const ProjectorField& field);

struct FreeClass {
    std::map<std::string, int> chern;     // c1 on each generating cycle
    std::vector<long long> coordinates;   // in the group of classify(space, rank)
    std::string value;
};

FreeClass fkmm_free(const ProjectorField& field);

// Multiplies every frame by an independent Haar-random unitary.
ProjectorField gauge_twist(const ProjectorField& field, std::mt19937_64& rng);

struct FkmmClass {
    std::string group;
    std::string value;
    std::vector<long long> coordinates;
    bool complete = true;
    bool operator==(const FkmmClass&) const = default;
};

struct InvariantReport {
    std::string model;
    std::string space;
    std::string grid;
    std::map<std::string, int> chern;
    std::map<std::string, int> fkm_signs;
    std::map<std::string, int> z2_indices;
    FkmmClass fkmm_class;
    std::size_t grid_points = 0;
    double min_gap = 0;  // band gap 2 sqrt(min Q) over the grid
    double max_plaquette_phase = 0;
    double max_unitarity_defect = 0;

    bool operator==(const InvariantReport&) const = default;
};

enum class Which { All, Chern, Z2, Fkmm };
Which parse_which(const std::string& s);

InvariantReport compute_invariants(const CliffordModel& model, std::shared_ptr<const Grid> grid, Which which = Which::All);
InvariantReport compute_invariants(const ProjectorField& field, const CliffordModel& model, Which which = Which::All);

// Rows "k1,k2,...,F" with the coordinates of the first vertex of each plaquette.
std::string curvature_csv(const ProjectorField& field, const CycleSelector& cycle);

}  // namespace fkmm
