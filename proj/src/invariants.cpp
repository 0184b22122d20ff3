#include "fkmm/invariants.hpp"
#include "fkmm/errors.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace fkmm {

namespace {

using cd = std::complex<double>;
constexpr double two_pi = 2 * std::numbers::pi;

std::string signed_str(int s) { return s > 0 ? "+1" : "-1"; }

std::vector<CycleSelector> z2_cycles(const Grid& g) {
    if (dynamic_cast<const SphereGrid*>(&g)) return {CycleSelector::sphere()};
    const auto& t = dynamic_cast<const TorusGrid&>(g);
    if (t.dim() == 2) return {CycleSelector::plane(0, 1)};
    if (t.dim() == 3) return t.trim_planes();
    return {};
}


}  // namespace

std::string cycle_label(const Grid& g, const CycleSelector& c) {
    const auto t = dynamic_cast<const TorusGrid*>(&g);
    return c.label(t && t->dim() == 3 ? t->n() : 0);
}

ProjectorField ProjectorField::from_model(const CliffordModel& model, std::shared_ptr<const Grid> grid,
                                          double rel_gap_tol) {
    ProjectorField f;
    f.grid = std::move(grid);
    f.theta = model.theta();
    f.rank = model.rank();
    f.gap = gap_scan(model, *f.grid, rel_gap_tol);
    f.frames.resize(f.grid->size());
    for (std::size_t i = 0; i < f.grid->size(); ++i) f.frames[i] = frame(model.projector(f.grid->coordinates(i)), f.rank);
    return f;
}

double link_phase(const CMatrix& a, const CMatrix& b) { return std::arg((a.adjoint() * b).determinant()); }

double plaquette_phase(const std::vector<CMatrix>& frames, const Loop& loop) {
    cd prod = 1;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        prod *= (frames[loop[i]].adjoint() * frames[loop[(i + 1) % loop.size()]]).determinant();
        prod /= std::abs(prod);
    }
    return std::arg(prod);
}

ChernResult chern_number(const ProjectorField& field, const CycleSelector& cycle) {
    ChernResult r;
    double sum = 0;
    for (const auto& loop : field.grid->plaquettes(cycle)) {
        const double p = plaquette_phase(field.frames, loop);
        sum += p;
        r.max_phase = std::max(r.max_phase, std::abs(p));
    }
    r.raw = sum / two_pi;
    r.value = static_cast<int>(std::lround(r.raw));
    r.admissible = r.max_phase < kAdmissiblePhase;
    if (!r.admissible)
        throw Error(Errc::NotAdmissible, "plaquette phase " + format_number(r.max_phase) + " exceeds 0.95 pi on " +
                                             cycle_label(*field.grid, cycle) + "; refine the grid");
    if (std::abs(r.raw - r.value) > kIntegerTolerance)
        throw Error(Errc::NumericalInconsistency, "Chern sum " + format_number(r.raw) + " is not an integer");
    return r;
}

SewingField sewing(const ProjectorField& field) {
    SewingField s;
    const Grid& g = *field.grid;
    s.w.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const CMatrix& a = field.frames[g.tau(i)];
        const CMatrix& b = field.frames[i];
        if (a.cols() != b.cols()) throw Error(Errc::RankMismatch, "frames of different rank");
        s.w[i] = a.adjoint() * field.theta.apply(b);
        const auto n = s.w[i].rows();
        s.max_unitarity_defect =
            std::max(s.max_unitarity_defect, (s.w[i].adjoint() * s.w[i] - CMatrix::Identity(n, n)).norm());
        if (g.tau(i) == i)
            s.max_antisymmetry_defect = std::max(s.max_antisymmetry_defect, (s.w[i] + s.w[i].transpose()).norm());
    }
    return s;
}

std::complex<double> pfaffian(const CMatrix& A) {
    if (A.rows() != A.cols() || (A.rows() != 2 && A.rows() != 4))
        throw Error(Errc::BadArgument, "pfaffian is implemented for 2x2 and 4x4 matrices");
    if ((A + A.transpose()).norm() > 1e-8) throw Error(Errc::NotAntisymmetric, "matrix is not antisymmetric");
    if (A.rows() == 2) return A(0, 1);
    return A(0, 1) * A(2, 3) - A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);
}

CMatrix symplectic_form(int rank) {
    CMatrix J = CMatrix::Zero(rank, rank);
    for (int i = 0; i + 1 < rank; i += 2) {
        J(i, i + 1) = 1;
        J(i + 1, i) = -1;
    }
    return J;
}

CMatrix kramers_frame(const CMatrix& frame, const AntiUnitary& theta) {
    const int r = static_cast<int>(frame.cols());
    CMatrix out(frame.rows(), r);
    for (int c = 0; c < r; c += 2) {
        // the column of the input least covered by what we already have
        double best_norm = -1;
        CMatrix best_vec;
        for (int j = 0; j < r; ++j) {
            CMatrix v = frame.col(j);
            if (c > 0) v -= out.leftCols(c) * (out.leftCols(c).adjoint() * v);
            if (v.norm() > best_norm) {
                best_norm = v.norm();
                best_vec = v;
            }
        }
        out.col(c) = best_vec / best_norm;
        out.col(c + 1) = -theta.apply(CMatrix(out.col(c)));
    }
    return out;
}

int half_domain_index(const ProjectorField& field, const CycleSelector& cycle, double* max_phase) {
    if (field.rank % 2 != 0) throw Error(Errc::RankMismatch, "Kramers pairs need even rank");
    const Grid& g = *field.grid;
    const HalfDomain h = g.half_domain(cycle);

    // Kramers gauge on the boundary: symplectic frames (w = J) at the fixed points, and
    // F(tau k) = Theta F(k) J^-1 elsewhere. The residual gauge then has det 1 at the fixed
    // points, so the boundary sum only moves by multiples of 4 pi.
    const CMatrix Jinv = -symplectic_form(field.rank);
    std::vector<CMatrix> frames = field.frames;
    std::set<std::size_t> done;
    for (const auto& loop : h.boundary)
        for (auto v : loop)
            if (g.tau(v) == v) frames[v] = kramers_frame(frames[v], field.theta);
    for (const auto& loop : h.boundary)
        for (auto v : loop) {
            const auto t = g.tau(v);
            if (t == v || done.count(v) || done.count(t)) continue;
            frames[t] = field.theta.apply(frames[v]) * Jinv;
            done.insert(v);
            done.insert(t);
        }

    double curvature = 0, worst = 0;
    for (const auto& loop : h.plaquettes) {
        const double p = plaquette_phase(frames, loop);
        curvature += p;
        worst = std::max(worst, std::abs(p));
    }
    if (max_phase) *max_phase = std::max(*max_phase, worst);
    if (worst >= kAdmissiblePhase)
        throw Error(Errc::NotAdmissible, "plaquette phase " + format_number(worst) + " exceeds 0.95 pi on " +
                                             cycle_label(g, cycle) + "; refine the grid");
    // The two halves of a boundary loop between its fixed points carry equal phases in this gauge.
    // Summing one half twice keeps a link sitting exactly at -pi from counting as +pi on both sides.
    double connection = 0;
    for (const auto& loop : h.boundary) {
        std::vector<std::size_t> ends;
        for (std::size_t i = 0; i < loop.size(); ++i)
            if (g.tau(loop[i]) == loop[i]) ends.push_back(i);
        auto link = [&](std::size_t i) { return link_phase(frames[loop[i]], frames[loop[(i + 1) % loop.size()]]); };
        if (ends.size() == 2) {
            for (std::size_t i = ends[0]; i < ends[1]; ++i) connection += 2 * link(i);
        } else {
            for (std::size_t i = 0; i < loop.size(); ++i) connection += link(i);
        }
    }

    const double raw = (connection - curvature) / two_pi;
    const long n = std::lround(raw);
    if (std::abs(raw - n) > kIntegerTolerance)
        throw Error(Errc::NumericalInconsistency, "half-domain sum " + format_number(raw) + " is not an integer");
    return n % 2 == 0 ? 1 : -1;
}

Z2Result fkm_indices(const ProjectorField& field) {
    const Grid& g = *field.grid;
    const FixedSet fs = g.space().fixed_set();
    if (!fs.isolated())
        throw Error(Errc::NoIsolatedFixedPoints, g.space().str() + " has fixed set " + fs.str());
    Z2Result r;
    const auto fixed = g.fixed_points().points;
    for (auto p : fixed) r.signs[g.point_label(p)] = 1;

    const auto cycles = z2_cycles(g);
    if (cycles.empty()) return r;  // circles: the class is unique
    std::vector<int> values;
    for (const auto& c : cycles) {
        values.push_back(half_domain_index(field, c, &r.max_phase));
        r.planes[cycle_label(g, c)] = values.back();
    }

    if (cycles.size() == 1) {
        r.indices["Z2"] = values[0];
        r.signs[g.point_label(fixed.front())] = values[0];
        return r;
    }
    // trim_planes orders the planes as (k_i = 0, k_i = pi) for i = 1, 2, 3
    const int strong = values[0] * values[1];
    if (values[2] * values[3] != strong || values[4] * values[5] != strong)
        throw Error(Errc::NumericalInconsistency, "the strong index differs between plane pairs");
    r.indices["strong"] = strong;
    const auto& t = dynamic_cast<const TorusGrid&>(g);
    const int h = t.n() / 2;
    int nu[3];
    for (int i = 0; i < 3; ++i) {
        nu[i] = values[2 * i + 1];
        r.indices["weak" + std::to_string(i + 1)] = nu[i];
    }
    // nu_i at (pi along e_i), and the product of everything at the origin
    r.signs[g.point_label(t.index({0, 0, 0}))] = strong * nu[0] * nu[1] * nu[2];
    r.signs[g.point_label(t.index({h, 0, 0}))] = nu[0];
    r.signs[g.point_label(t.index({0, h, 0}))] = nu[1];
    r.signs[g.point_label(t.index({0, 0, h}))] = nu[2];
    return r;
}

FreeClass fkmm_free(const ProjectorField& field) {
    const Grid& g = *field.grid;
    const InvolutiveSpace& s = g.space();
    if (!s.is_free()) throw Error(Errc::NotFree, s.str() + " has fixed points");
    FreeClass out;
    auto chern_even = [&](const CycleSelector& c, int offset) {
        const int c1 = chern_number(field, c).value;
        out.chern[cycle_label(g, c)] = c1;
        if ((c1 - offset) % 2 != 0)
            throw Error(Errc::OddChernParity, "c1 = " + std::to_string(c1) + " on " + cycle_label(g, c) + " has the wrong parity for rank " +
                                                  std::to_string(field.rank));
        return (c1 - offset) / 2;
    };
    if (s.is_sphere()) {
        // kappa = c1/2 for even rank and (c1 - r)/2 for odd rank r
        out.coordinates.push_back(chern_even(CycleSelector::sphere(), field.rank % 2 ? field.rank : 0));
    } else {
        const auto& t = dynamic_cast<const TorusGrid&>(g);
        const int d = t.dim();
        // c1 on every coordinate plane; c1 is linear on H_2, so any other plane follows from minors
        std::vector<std::vector<int>> c(d, std::vector<int>(d, 0));
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j) {
                const auto cycle = CycleSelector::plane(i, j);
                c[i][j] = chern_number(field, cycle).value;
                c[j][i] = -c[i][j];
                out.chern[cycle_label(g, cycle)] = c[i][j];
            }
        // Normalize T^{a,b,c} to T^{a+c-1,b,1}: with f the first free direction, k_j - k_f is
        // invariant for the other free directions j. The new basis cycles are the columns of the
        // inverse change of coordinates: e_f + sum of the other free e_j, and e_j otherwise.
        using F = TorusGrid::Factor;
        int first_free = -1;
        for (int i = 0; i < d; ++i)
            if (t.factors()[i] == F::Free && first_free < 0) first_free = i;
        std::vector<std::vector<int>> basis(d, std::vector<int>(d, 0));
        std::vector<F> kind(t.factors().begin(), t.factors().end());
        for (int i = 0; i < d; ++i) {
            basis[i][i] = 1;
            if (kind[i] == F::Free && i != first_free) {
                basis[first_free][i] = 1;
                kind[i] = F::Trivial;
            }
        }
        auto pair_chern = [&](const std::vector<int>& v, const std::vector<int>& w) {
            long sum = 0;
            for (int i = 0; i < d; ++i)
                for (int j = i + 1; j < d; ++j) sum += static_cast<long>(v[i] * w[j] - v[j] * w[i]) * c[i][j];
            return static_cast<int>(sum);
        };
        // the free part is detected on the planes where tau reverses orientation: one TR direction
        for (int r = 0; r < d; ++r)
            for (int q = r + 1; q < d; ++q) {
                if ((kind[r] == F::TR) + (kind[q] == F::TR) != 1) continue;
                const int c1 = pair_chern(basis[r], basis[q]);
                if (c1 % 2 != 0)
                    throw Error(Errc::OddChernParity, "c1 = " + std::to_string(c1) + " on the (" + std::to_string(r + 1) + "," +
                                                          std::to_string(q + 1) + ") generating plane is odd");
                out.coordinates.push_back(c1 / 2);
            }
        const auto expected = torus_cohomology(s, 2, 1).free_rank();
        if (static_cast<std::size_t>(expected) != out.coordinates.size())
            throw Error(Errc::NumericalInconsistency, "generating planes do not match the free rank of H^2");
    }
    if (out.coordinates.empty()) {
        out.value = "0";
    } else if (out.coordinates.size() == 1) {
        out.value = std::to_string(out.coordinates[0]);
    } else {
        out.value = "(";
        for (std::size_t i = 0; i < out.coordinates.size(); ++i) out.value += (i ? "," : "") + std::to_string(out.coordinates[i]);
        out.value += ")";
    }
    return out;
}

ProjectorField gauge_twist(const ProjectorField& field, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    ProjectorField out = field;
    for (auto& f : out.frames) {
        const int r = static_cast<int>(f.cols());
        CMatrix Z(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) Z(i, j) = cd(g(rng), g(rng));
        Eigen::HouseholderQR<CMatrix> qr(Z);
        CMatrix Q = qr.householderQ();
        // fix the phases so that Q is Haar distributed
        const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int i = 0; i < r; ++i) Q.col(i) *= R(i, i) / std::abs(R(i, i));
        f = f * Q;
    }
    return out;
}

Which parse_which(const std::string& s) {
    if (s == "all") return Which::All;
    if (s == "chern") return Which::Chern;
    if (s == "z2") return Which::Z2;
    if (s == "fkmm") return Which::Fkmm;
    throw Error(Errc::BadArgument, "--which must be all, chern, z2 or fkmm, got '" + s + "'");
}

InvariantReport compute_invariants(const CliffordModel& model, std::shared_ptr<const Grid> grid, Which which) {
    return compute_invariants(ProjectorField::from_model(model, std::move(grid)), model, which);
}

InvariantReport compute_invariants(const ProjectorField& field, const CliffordModel& model, Which which) {
    const Grid& g = *field.grid;
    const InvolutiveSpace& s = g.space();
    InvariantReport r;
    r.model = model.name;
    r.space = model.space.str();
    r.grid = g.describe();
    r.grid_points = g.size();
    r.min_gap = 2 * std::sqrt(field.gap.min_q);
    r.max_unitarity_defect = sewing(field).max_unitarity_defect;

    const bool want_chern = which == Which::All || which == Which::Chern;
    const bool want_class = which == Which::All || which == Which::Fkmm || which == Which::Z2;

    std::vector<CycleSelector> cycles = g.cycles();
    if (want_chern)
        for (const auto& c : cycles) {
            const auto cr = chern_number(field, c);
            r.chern[cycle_label(g, c)] = cr.value;
            r.max_plaquette_phase = std::max(r.max_plaquette_phase, cr.max_phase);
        }
    if (!want_class) return r;

    const FixedSet fs = s.fixed_set();
    const ClassificationResult cls = classify(model.space, field.rank);
    r.fkmm_class.group = cls.status == ClassificationResult::Status::Group ? cls.group.str() : cls.value_str();
    if (cls.status == ClassificationResult::Status::Empty)
        throw Error(Errc::RankMismatch, "no Q-structure of rank " + std::to_string(field.rank) + " exists on " + s.str());
    if (cls.status == ClassificationResult::Status::Unique ||
        (cls.status == ClassificationResult::Status::Group && cls.group.is_trivial())) {
        r.fkmm_class.value = "0";
        return r;
    }
    if (fs.isolated()) {
        const Z2Result z = fkm_indices(field);
        r.z2_indices = z.indices;
        r.fkm_signs = z.signs;
        r.max_plaquette_phase = std::max(r.max_plaquette_phase, z.max_phase);
        if (z.indices.count("Z2")) {
            r.fkmm_class.value = signed_str(z.indices.at("Z2"));
            r.fkmm_class.coordinates = {z.indices.at("Z2") < 0 ? 1 : 0};
        } else if (z.indices.count("strong")) {
            std::string v = "strong " + signed_str(z.indices.at("strong")) + "; weak (";
            for (const char* k : {"strong", "weak1", "weak2", "weak3"}) r.fkmm_class.coordinates.push_back(z.indices.at(k) < 0 ? 1 : 0);
            for (int i = 1; i <= 3; ++i) v += (i > 1 ? "," : "") + signed_str(z.indices.at("weak" + std::to_string(i)));
            r.fkmm_class.value = v + ")";
        } else {
            r.fkmm_class.value = "0";
        }
    } else if (fs.empty()) {
        const FreeClass fc = fkmm_free(field);
        for (auto& [k, v] : fc.chern) r.chern[k] = v;
        r.fkmm_class.value = fc.value;
        r.fkmm_class.coordinates = fc.coordinates;
        if (!cls.group.torsion().empty()) {
            // c1 only sees the free part
            r.fkmm_class.value = (fc.coordinates.empty() ? "" : fc.value + "; ") + "torsion part not computed";
            r.fkmm_class.complete = false;
        }
    } else {
        // Positive-dimensional fixed sets: only c1 and its parity are available here.
        for (const auto& c : cycles) {
            const int c1 = want_chern ? r.chern.at(cycle_label(g, c)) : chern_number(field, c).value;
            if (c1 % 2 != 0)
                throw Error(Errc::OddChernParity, "c1 = " + std::to_string(c1) + " on " + cycle_label(g, c) + " must be even");
        }
        if (s.is_sphere() && cycles.size() == 1) {
            const int c1 = chern_number(field, cycles[0]).value;
            r.fkmm_class.value = std::to_string(c1);
            r.fkmm_class.coordinates = {c1 / 2};
        } else {
            r.fkmm_class.value = "c1 even on every cycle";
            r.fkmm_class.complete = false;
        }
    }
    return r;
}

std::string curvature_csv(const ProjectorField& field, const CycleSelector& cycle) {
    std::ostringstream out;
    const auto names = field.grid->coordinate_names();
    for (const auto& n : names) out << n << ",";
    out << "F_plaquette\n";
    for (const auto& loop : field.grid->plaquettes(cycle)) {
        for (double x : field.grid->coordinates(loop.front())) out << format_number(x) << ",";
        out << format_number(plaquette_phase(field.frames, loop)) << "\n";
    }
    return out.str();
}

}  // namespace fkmm
