#include "fkmm/models.hpp"
#include "fkmm/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace fkmm {

namespace {

using cd = std::complex<double>;

CMatrix identity(int n) { return CMatrix::Identity(n, n); }

double frobenius(const CMatrix& a) { return a.norm(); }

}  // namespace

CMatrix pauli(int j) {
    CMatrix s(2, 2);
    const cd i(0, 1);
    switch (j) {
        case 0: s << 1, 0, 0, 1; break;
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -i, i, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw Error(Errc::BadArgument, "Pauli index must be 0..3");
    }
    return s;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

const SigmaSet& SigmaSet::standard() {
    static const SigmaSet s = [] {
        SigmaSet r;
        r.sigma = {kron(pauli(1), pauli(3)), kron(pauli(2), pauli(3)), kron(pauli(0), pauli(1)),
                   kron(pauli(0), pauli(2)), kron(pauli(3), pauli(3))};
        r.J = kron(pauli(2), pauli(0));
        return r;
    }();
    return s;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Clifford: return "clifford";
        case Family::Pauli: return "pauli";
        case Family::PauliDoubled: return "pauli-doubled";
    }
    return {};
}

Family parse_family(const std::string& s) {
    if (s == "clifford") return Family::Clifford;
    if (s == "pauli") return Family::Pauli;
    if (s == "pauli-doubled") return Family::PauliDoubled;
    throw Error(Errc::BadModelFile, "family must be clifford, pauli or pauli-doubled, got '" + s + "'");
}

const std::vector<CMatrix>& CliffordModel::gammas() const {
    static const std::vector<CMatrix> clifford(SigmaSet::standard().sigma.begin(), SigmaSet::standard().sigma.end());
    static const std::vector<CMatrix> paulis{pauli(1), pauli(2), pauli(3)};
    static const std::vector<CMatrix> doubled{kron(pauli(1), pauli(0)), kron(pauli(2), pauli(0)), kron(pauli(3), pauli(0))};
    switch (family) {
        case Family::Clifford: return clifford;
        case Family::Pauli: return paulis;
        case Family::PauliDoubled: return doubled;
    }
    return clifford;
}

AntiUnitary CliffordModel::theta() const {
    switch (family) {
        case Family::Clifford: return SigmaSet::standard().theta();
        // sigma_2 o C  =  C o conj(sigma_2)
        case Family::Pauli: return {pauli(2).conjugate()};
        case Family::PauliDoubled: return {kron(pauli(0), pauli(2))};
    }
    return {};
}

std::vector<int> CliffordModel::parities() const {
    const AntiUnitary th = theta();
    std::vector<int> eps;
    for (const auto& g : gammas()) {
        const double s = (th.conjugate(g) * g).trace().real() / dim();
        eps.push_back(s > 0 ? 1 : -1);
    }
    return eps;
}

double CliffordModel::param(const std::string& n) const {
    const int s = symbols.parameter_slot(n);
    if (s < 0) throw Error(Errc::BadArgument, "model has no parameter '" + n + "'");
    return params[s];
}

CliffordModel CliffordModel::with_param(const std::string& n, double value) const {
    const int s = symbols.parameter_slot(n);
    if (s < 0) throw Error(Errc::BadArgument, "model has no parameter '" + n + "'");
    CliffordModel m = *this;
    m.params[s] = value;
    return m;
}

CliffordModel CliffordModel::pullback() const {
    std::vector<Expression> sub;
    const auto& names = symbols.coordinates;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        Expression x = Expression::coordinate(i, names[i]);
        bool flip = false, shift = false;
        if (space.is_sphere()) {
            flip = i >= space.p();
        } else if (i >= space.a() + space.b()) {
            shift = true;
        } else {
            flip = i >= space.a();
        }
        if (flip) x = Expression::unary(Expression::Op::Neg, x);
        if (shift) x = Expression::binary(Expression::Op::Add, x, Expression::pi());
        sub.push_back(x);
    }
    CliffordModel m = *this;
    m.name = name + "-pullback";
    for (auto& f : m.F) f = f.substitute(sub);
    return m;
}

std::vector<double> CliffordModel::values(std::span<const double> x) const {
    std::vector<double> v(F.size());
    for (std::size_t j = 0; j < F.size(); ++j) v[j] = F[j].eval(x, params);
    return v;
}

CMatrix CliffordModel::hamiltonian(std::span<const double> x) const {
    const auto v = values(x);
    const auto& g = gammas();
    CMatrix H = CMatrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < v.size(); ++j) H += v[j] * g[j];
    return H;
}

double CliffordModel::gap(std::span<const double> x) const {
    double q = 0;
    for (double f : values(x)) q += f * f;
    return q;
}

CMatrix CliffordModel::projector(std::span<const double> x, double gap_tol) const {
    const auto v = values(x);
    double q = 0;
    for (double f : v) q += f * f;
    if (q <= gap_tol) throw Error(Errc::GapClosed, "Q = " + format_number(q) + " at a grid point");
    const double s = std::sqrt(q);
    const auto& g = gammas();
    CMatrix P = identity(dim());
    for (std::size_t j = 0; j < v.size(); ++j) P -= (v[j] / s) * g[j];
    return 0.5 * P;
}

CMatrix CliffordModel::projector_plus(std::span<const double> x, double gap_tol) const {
    return identity(dim()) - projector(x, gap_tol);
}

std::vector<std::string> coordinate_names(const InvolutiveSpace& space) {
    std::vector<std::string> out;
    if (space.is_torus()) {
        for (int i = 1; i <= space.dimension(); ++i) out.push_back("k" + std::to_string(i));
    } else {
        for (int i = 0; i < space.p() + space.q(); ++i) out.push_back("x" + std::to_string(i));
    }
    return out;
}

namespace {

std::size_t term_count(Family f) { return f == Family::Clifford ? 5 : 3; }

void check_space(const InvolutiveSpace& s) {
    if (s.is_empty() || s.dimension() < 1 || s.dimension() > 3)
        throw Error(Errc::UnsupportedSpace, "models live on spaces of dimension 1..3, got " + s.str());
    if (s.is_sphere() && s.dimension() != 2 && !(s.p() == 1 && s.q() == 3))
        throw Error(Errc::UnsupportedSpace, "sphere models are supported on S:0,3, S:1,2, S:1,3 and S:2,1, got " + s.str());
}

void check_param_name(const std::string& n, const std::vector<std::string>& coords) {
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    if (!std::regex_match(n, ident)) throw Error(Errc::BadModelFile, "parameter name '" + n + "' is not an identifier");
    if (n == "sin" || n == "cos" || n == "pi" || std::find(coords.begin(), coords.end(), n) != coords.end())
        throw Error(Errc::BadModelFile, "parameter name '" + n + "' is reserved");
}

}  // namespace

CliffordModel make_model(const InvolutiveSpace& space, Family family, const std::vector<std::string>& F,
                         const std::map<std::string, double>& params, const std::string& name) {
    check_space(space);
    CliffordModel m;
    m.name = name;
    m.space = space;
    m.family = family;
    m.symbols.coordinates = coordinate_names(space);
    for (auto& [k, v] : params) {
        check_param_name(k, m.symbols.coordinates);
        m.symbols.parameters.push_back(k);
        m.params.push_back(v);
    }
    if (F.size() != term_count(family))
        throw Error(Errc::BadModelFile, family_name(family) + " models need " + std::to_string(term_count(family)) +
                                            " coefficient functions");
    for (auto& f : F) m.F.push_back(parse_expression(f, m.symbols));
    return m;
}

CliffordModel parse_model(const std::string& text, const std::string& name) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        throw ParseError(Errc::SyntaxError, e.msg, e.mark.line + 1, e.mark.column + 1);
    }
    auto bad = [](const YAML::Node& n, const std::string& what) {
        return ParseError(Errc::BadModelFile, what, n.Mark().line + 1, n.Mark().column + 1);
    };
    if (!doc.IsMap()) throw Error(Errc::BadModelFile, "model file must be a mapping of keys");

    const YAML::Node format = doc["format"];
    if (!format) throw Error(Errc::BadModelFile, "missing required key 'format' (expected format: 1)");
    if (!format.IsScalar() || format.Scalar() != "1") throw bad(format, "unsupported format '" + YAML::Dump(format) + "'");
    const YAML::Node space_node = doc["space"];
    if (!space_node || !space_node.IsScalar()) throw Error(Errc::BadModelFile, "missing required key 'space'");

    CliffordModel m;
    m.name = name;
    try {
        m.space = InvolutiveSpace::parse(space_node.Scalar());
        check_space(m.space);
    } catch (const Error& e) {
        throw bad(space_node, e.what());
    }
    if (const YAML::Node fam = doc["family"]) {
        try {
            m.family = parse_family(fam.Scalar());
        } catch (const Error& e) {
            throw bad(fam, e.what());
        }
    }
    m.symbols.coordinates = coordinate_names(m.space);

    const std::size_t terms = term_count(m.family);
    std::set<std::string> known{"format", "space", "family", "params"};
    for (std::size_t j = 0; j < terms; ++j) known.insert("F" + std::to_string(j));
    for (const auto& kv : doc) {
        const std::string key = kv.first.Scalar();
        if (!known.count(key)) throw bad(kv.first, "unknown key '" + key + "'");
    }

    if (const YAML::Node params = doc["params"]) {
        if (!params.IsMap()) throw bad(params, "'params' must map names to numbers");
        for (const auto& kv : params) {
            const std::string key = kv.first.Scalar();
            try {
                check_param_name(key, m.symbols.coordinates);
            } catch (const Error& e) {
                throw bad(kv.first, e.what());
            }
            if (m.symbols.parameter_slot(key) >= 0) throw bad(kv.first, "duplicate parameter '" + key + "'");
            double v = 0;
            try {
                v = kv.second.as<double>();
            } catch (const YAML::Exception&) {
                throw bad(kv.second, "parameter '" + key + "' is not a number");
            }
            m.symbols.parameters.push_back(key);
            m.params.push_back(v);
        }
    }

    for (std::size_t j = 0; j < terms; ++j) {
        const std::string key = "F" + std::to_string(j);
        const YAML::Node f = doc[key];
        if (!f) throw Error(Errc::BadModelFile, "missing required key '" + key + "'");
        if (!f.IsScalar()) throw bad(f, "'" + key + "' must be an expression string");
        // quoted scalars start one column after the mark
        const int col = f.Mark().column + 1 + (f.Tag() == "!" ? 1 : 0);
        m.F.push_back(parse_expression(f.Scalar(), m.symbols, f.Mark().line + 1, col));
    }
    return m;
}

std::string emit_model(const CliffordModel& m) {
    std::ostringstream out;
    out << "format: 1\n";
    out << "space: " << m.space.str() << "\n";
    out << "family: " << family_name(m.family) << "\n";
    if (!m.params.empty()) {
        out << "params:\n";
        for (std::size_t i = 0; i < m.params.size(); ++i)
            out << "  " << m.symbols.parameters[i] << ": " << format_number(m.params[i]) << "\n";
    }
    for (std::size_t j = 0; j < m.F.size(); ++j) out << "F" << j << ": \"" << m.F[j].str() << "\"\n";
    return out.str();
}

CliffordModel load_model(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) return builtin_model(source.substr(8));
    std::ifstream in(source);
    if (!in) throw Error(Errc::BadModelFile, "cannot read model file '" + source + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str(), source);
}

std::string TrsReport::str() const {
    std::ostringstream out;
    out << (pass ? "TRS: pass" : "TRS: FAIL") << " (tol " << format_number(tolerance) << ")\n";
    out << "worst parity violation: " << format_number(worst_parity);
    if (worst_function >= 0) out << " in F" << worst_function << " at " << parity_location;
    out << "\nworst matrix violation: " << format_number(worst_matrix);
    if (!matrix_location.empty()) out << " at " << matrix_location;
    out << "\n";
    return out.str();
}

TrsReport verify_trs(const CliffordModel& model, const Grid& grid, double tol) {
    TrsReport r;
    r.tolerance = tol;
    const AntiUnitary th = model.theta();
    const auto eps = model.parities();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto x = grid.coordinates(i), y = grid.coordinates(grid.tau(i));
        const auto fx = model.values(x), fy = model.values(y);
        for (std::size_t j = 0; j < fx.size(); ++j) {
            const double d = std::abs(fy[j] - eps[j] * fx[j]);
            if (d > r.worst_parity || std::isnan(d)) {
                r.worst_parity = d;
                r.worst_function = static_cast<int>(j);
                r.parity_location = grid.point_label(i);
            }
        }
        const double dm = frobenius(th.conjugate(model.hamiltonian(x)) - model.hamiltonian(y));
        if (dm > r.worst_matrix || std::isnan(dm)) {
            r.worst_matrix = dm;
            r.matrix_location = grid.point_label(i);
        }
    }
    r.pass = r.worst_parity <= tol && r.worst_matrix <= tol;
    return r;
}

double default_gap_tolerance() {
    if (const char* env = std::getenv("FKMM_GAP_TOL")) {
        try {
            std::size_t used = 0;
            const double v = std::stod(env, &used);
            if (used == std::string(env).size() && v >= 0) return v;
        } catch (const std::exception&) {
        }
        throw Error(Errc::BadArgument, std::string("FKMM_GAP_TOL must be a non-negative number, got '") + env + "'");
    }
    return 1e-8;
}

GapReport gap_minimum(const CliffordModel& model, const Grid& grid, double rel_tol) {
    GapReport r;
    r.min_q = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double q = model.gap(grid.coordinates(i));
        if (q < r.min_q) {
            r.min_q = q;
            r.argmin = i;
        }
        r.max_q = std::max(r.max_q, q);
    }
    r.location = grid.point_label(r.argmin);
    r.threshold = rel_tol * r.max_q;
    return r;
}

GapReport gap_scan(const CliffordModel& model, const Grid& grid, double rel_tol) {
    GapReport r = gap_minimum(model, grid, rel_tol);
    if (r.closed())
        throw Error(Errc::GapClosed, "min Q = " + format_number(r.min_q) + " at " + r.location +
                                         " (threshold " + format_number(r.threshold) + ")");
    return r;
}

CMatrix frame(const CMatrix& P, int rank) {
    const double tr = P.trace().real();
    if (std::abs(tr - rank) > 1e-9)
        throw Error(Errc::RankMismatch, "projector trace " + format_number(tr) + " but rank " + std::to_string(rank));
    CMatrix cols = P;
    CMatrix out(P.rows(), rank);
    std::vector<bool> used(P.cols(), false);
    for (int r = 0; r < rank; ++r) {
        Eigen::Index best = -1;
        double best_norm = -1;
        for (Eigen::Index c = 0; c < cols.cols(); ++c) {
            if (used[c]) continue;
            const double n = cols.col(c).norm();
            if (n > best_norm) {
                best_norm = n;
                best = c;
            }
        }
        if (best_norm < 1e-6) throw Error(Errc::RankMismatch, "projector columns do not span the expected rank");
        used[best] = true;
        Eigen::VectorXcd v = cols.col(best) / best_norm;
        out.col(r) = v;
        for (Eigen::Index c = 0; c < cols.cols(); ++c)
            if (!used[c]) cols.col(c) -= v * v.dot(cols.col(c));
    }
    return out;
}

CMatrix frame(const CMatrix& P) { return frame(P, static_cast<int>(std::lround(P.trace().real()))); }

namespace {

std::map<std::string, CliffordModel> make_registry() {
    std::map<std::string, CliffordModel> reg;
    auto add = [&](const std::string& name, const InvolutiveSpace& s, Family f, std::vector<std::string> F,
                   std::map<std::string, double> params = {}) { reg.emplace(name, make_model(s, f, F, params, "builtin:" + name)); };

    // Restrictions of P_Hopf = (1 + sum k_j Sigma_j)/2; the occupied P_- of F = -k is exactly that projector.
    // k_2 is the invariant coordinate x0 and the flipped k_0, k_1, k_3 are x1, x2, x3.
    add("hopf-s12", InvolutiveSpace::sphere(1, 2), Family::Clifford, {"-x1", "-x2", "-x0", "0", "0"});
    add("hopf-s13", InvolutiveSpace::sphere(1, 3), Family::Clifford, {"-x1", "-x2", "-x0", "-x3", "0"});
    add("hopf-line-s03", InvolutiveSpace::sphere(0, 3), Family::Pauli, {"-x0", "-x1", "-x2"});
    // L_1 (x) C^2 over S^{2,1}: C is a Real structure on P(x) = (1 + x1 s1 + x2 s2 + x0 s3)/2 because only
    // s2 is imaginary, and the cyclic relabelling keeps the degree of x -> P(x) at +1.
    add("hopf-double-s21", InvolutiveSpace::sphere(2, 1), Family::PauliDoubled, {"-x1", "-x2", "-x0"});
    add("mass-t020", InvolutiveSpace::torus(0, 2, 0), Family::Clifford,
        {"sin(k1)", "sin(k2)", "m + cos(k1) + cos(k2)", "t*sin(k1)*cos(k2)", "0"}, {{"m", 1.0}, {"t", 0.5}});

    const std::vector<std::string> trivial{"0", "0", "1", "0", "0"};
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b)
            for (int c = 0; a + b + c <= 3; ++c)
                if (a + b + c > 0)
                    add("trivial-t" + std::to_string(a) + std::to_string(b) + std::to_string(c),
                        InvolutiveSpace::torus(a, b, c), Family::Clifford, trivial);
    for (auto [p, q] : {std::pair{0, 3}, {1, 2}, {1, 3}, {2, 1}})
        add("trivial-s" + std::to_string(p) + std::to_string(q), InvolutiveSpace::sphere(p, q), Family::Clifford, trivial);
    return reg;
}

const std::map<std::string, CliffordModel>& registry() {
    static const auto reg = make_registry();
    return reg;
}

}  // namespace

std::vector<std::string> builtin_names() {
    std::vector<std::string> out;
    for (auto& [k, v] : registry()) out.push_back(k);
    return out;
}

CliffordModel builtin_model(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error(Errc::BadArgument, "unknown builtin model '" + name + "'");
    return it->second;
}

}  // namespace fkmm
