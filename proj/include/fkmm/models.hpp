#pragma once

#include "fkmm/cohomology.hpp"
#include "fkmm/expression.hpp"
#include "fkmm/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <map>
#include <string>
#include <vector>

namespace fkmm {

using CMatrix = Eigen::MatrixXcd;

// Theta v = conj(U v), i.e. Theta = C o U with C the entrywise complex conjugation.
struct AntiUnitary {
    CMatrix U;

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return (U * v).conjugate(); }
    CMatrix apply(const CMatrix& frame) const { return (U * frame).conjugate(); }
    // Theta A Theta^*
    CMatrix conjugate(const CMatrix& A) const { return (U * A * U.adjoint()).conjugate(); }
    // Theta^2 = conj(U) U
    CMatrix square() const { return U.conjugate() * U; }
};

CMatrix pauli(int j);  // sigma_0 = 1, sigma_1..3 the Pauli matrices
CMatrix kron(const CMatrix& a, const CMatrix& b);

// Sigma_0 = s1(x)s3, Sigma_1 = s2(x)s3, Sigma_2 = 1(x)s1, Sigma_3 = 1(x)s2, Sigma_4 = s3(x)s3 and
// the time reversal Theta = C o J with J = s2(x)1.
struct SigmaSet {
    std::array<CMatrix, 5> sigma;
    CMatrix J;

    static const SigmaSet& standard();
    AntiUnitary theta() const { return {J}; }
};

// A Hamiltonian H(x) = sum_j F_j(x) Gamma_j built from anticommuting Hermitian involutions, so that
// H^2 = Q 1 with Q = sum F_j^2. The occupied bundle is the range of P_-(x) = (1 - H/sqrt(Q))/2.
//   clifford:      Gamma_j = Sigma_j (4x4), Theta = C o J, rank 2
//   pauli:         Gamma_j = sigma_{j+1} (2x2), Theta = s2 o C, rank 1
//   pauli-doubled: Gamma_j = sigma_{j+1} (x) 1 (4x4), Theta = C o (1 (x) s2), rank 2
enum class Family { Clifford, Pauli, PauliDoubled };

std::string family_name(Family f);
Family parse_family(const std::string& s);

struct CliffordModel {
    std::string name;
    InvolutiveSpace space = InvolutiveSpace::torus(0, 2, 0);
    Family family = Family::Clifford;
    SymbolTable symbols;
    std::vector<Expression> F;
    std::vector<double> params;

    std::size_t terms() const { return F.size(); }
    int dim() const { return family == Family::Pauli ? 2 : 4; }
    int rank() const { return dim() / 2; }
    const std::vector<CMatrix>& gammas() const;
    AntiUnitary theta() const;
    // eps_j with Theta Gamma_j Theta^* = eps_j Gamma_j; TRS asks F_j(tau x) = eps_j F_j(x).
    std::vector<int> parities() const;

    double param(const std::string& name) const;
    CliffordModel with_param(const std::string& name, double value) const;
    // F_j o tau, written out by substituting the coordinate action of tau.
    CliffordModel pullback() const;

    std::vector<double> values(std::span<const double> x) const;
    CMatrix hamiltonian(std::span<const double> x) const;
    double gap(std::span<const double> x) const;  // Q(x)
    // P_-; GapClosed when Q(x) <= gap_tol.
    CMatrix projector(std::span<const double> x, double gap_tol = 0) const;
    CMatrix projector_plus(std::span<const double> x, double gap_tol = 0) const;
};

// Coordinate names a model on `space` may use: k1..kd on tori, x0..x_{p+q-1} on spheres.
std::vector<std::string> coordinate_names(const InvolutiveSpace& space);

// A deliberately small YAML schema:
//   format: 1
//   space: T:0,2,0
//   family: clifford          (optional)
//   params: {m: 1, t: 0.5}    (optional)
//   F0: sin(k1)
//   ...                        F0..F4 for clifford, F0..F2 otherwise
CliffordModel parse_model(const std::string& text, const std::string& name = "model");
CliffordModel load_model(const std::string& path_or_builtin);
std::string emit_model(const CliffordModel& m);

CliffordModel make_model(const InvolutiveSpace& space, Family family, const std::vector<std::string>& F,
                         const std::map<std::string, double>& params = {}, const std::string& name = "model");

struct TrsReport {
    bool pass = true;
    double tolerance = 0;
    double worst_parity = 0;     // max_j,x |F_j(tau x) - eps_j F_j(x)|
    int worst_function = -1;
    std::string parity_location;
    double worst_matrix = 0;     // max_x ||Theta H(x) Theta^* - H(tau x)||
    std::string matrix_location;
    std::string str() const;
};

TrsReport verify_trs(const CliffordModel& model, const Grid& grid, double tol = 1e-9);

// FKMM_GAP_TOL if set, else 1e-8. It is relative to the largest Q on the grid.
double default_gap_tolerance();

struct GapReport {
    double min_q = 0;
    double max_q = 0;
    std::size_t argmin = 0;
    std::string location;
    double threshold = 0;  // tolerance * max_q
    bool closed() const { return min_q <= threshold; }
};

GapReport gap_minimum(const CliffordModel& model, const Grid& grid, double rel_tol = default_gap_tolerance());
// Same, but throws GapClosed.
GapReport gap_scan(const CliffordModel& model, const Grid& grid, double rel_tol = default_gap_tolerance());

// Orthonormal columns spanning Ran(P) by column-pivoted Gram-Schmidt on the columns of P
// (largest remaining norm first, lowest index on ties).
CMatrix frame(const CMatrix& P, int rank);
CMatrix frame(const CMatrix& P);  // rank = round(Tr P)

std::vector<std::string> builtin_names();
CliffordModel builtin_model(const std::string& name);

}  // namespace fkmm
