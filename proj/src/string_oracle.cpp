#include "necklace/string_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "necklace/errors.hpp"

namespace necklace::string_oracle {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

double sgn5(int a) { return a == 4 ? 1.0 : -1.0; }

Mat5d identity_d() {
    Mat5d m{};
    for (int i = 0; i < 5; ++i) m[i][i] = 1.0;
    return m;
}

void add_rank_one_d(Mat5d& m, const Vec5d& u, const Vec5d& v, double coeff) {
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) m[a][b] += coeff * u[a] * sgn5(b) * v[b];
}

Mat5d mat_pow(const Mat5d& m, long e) {
    Mat5d acc = identity_d();
    for (long i = 0; i < e; ++i) acc = compose_d(m, acc);
    return acc;
}

Vec5d to_doubles(const geom::Vec5& v) {
    Vec5d out{};
    for (int a = 0; a < 5; ++a) out[a] = v.c[a].to_double();
    return out;
}

Mat5d rotation_d(const NecklaceConfig& cfg) {
    Mat5d out{};
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) out[a][b] = cfg.r.at(a, b).to_double();
    return out;
}

// Middle-slice reflection: fixes the orthogonal complement of p_0 and the
// bisector direction p_1 - p_{n-1}.
Mat5d sigma_d(const NecklaceConfig& cfg) {
    const Vec5d p0 = to_doubles(cfg.p_at(0));
    const Vec5d p1 = to_doubles(cfg.p_at(1));
    const Vec5d pl = to_doubles(cfg.p_at(-1));
    Vec5d w{};
    for (int a = 0; a < 5; ++a) w[a] = p1[a] - pl[a];
    const double g2 = form_d(p0, to_doubles(cfg.p_at(2)));
    Mat5d s = identity_d();
    add_rank_one_d(s, p0, p0, 2.0);
    add_rank_one_d(s, w, w, 1.0 / (g2 + 1.0));
    return s;
}

// Eigen decomposition of a symmetric 3x3 by cyclic Jacobi rotations.
void jacobi3(std::array<std::array<double, 3>, 3> a, std::array<double, 3>& values,
             std::array<std::array<double, 3>, 3>& vectors) {
    vectors = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-30) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 3; ++q) {
                if (std::abs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int r = 0; r < 3; ++r) {
                    const double arp = a[r][p], arq = a[r][q];
                    a[r][p] = c * arp - s * arq;
                    a[r][q] = s * arp + c * arq;
                }
                for (int r = 0; r < 3; ++r) {
                    const double apr = a[p][r], aqr = a[q][r];
                    a[p][r] = c * apr - s * aqr;
                    a[q][r] = s * apr + c * aqr;
                }
                for (int r = 0; r < 3; ++r) {
                    const double vrp = vectors[r][p], vrq = vectors[r][q];
                    vectors[r][p] = c * vrp - s * vrq;
                    vectors[r][q] = s * vrp + c * vrq;
                }
            }
        }
    }
    for (int i = 0; i < 3; ++i) values[i] = a[i][i];
    // Sort ascending, carrying columns along.
    for (int i = 0; i < 3; ++i) {
        int best = i;
        for (int j = i + 1; j < 3; ++j)
            if (values[j] < values[best]) best = j;
        if (best != i) {
            std::swap(values[i], values[best]);
            for (int r = 0; r < 3; ++r) std::swap(vectors[r][i], vectors[r][best]);
        }
    }
}

struct PathFormula {
    // cos a(t) = (a1 t + a2) / (a3 t + a4)
    double a1, a2, a3, a4;
    double at(double t) const { return (a1 * t + a2) / (a3 * t + a4); }
};

PathFormula path_formula(long k, long m, long n, double end_x1, double end_x2) {
    if (n < 2 || n % 2 != 0 || !(1 < k && k < m && 2 * m < n))
        throw DomainError("angle tracking: parameters outside the necklace family");
    const double c1 = std::cos(2 * kPi / double(n));
    const double cm = std::cos(2 * kPi * double(m) / double(n));
    const double c2 = std::cos(4 * kPi / double(n));
    const double w1 = 1.0 - c1 * c1;
    const double wm = 1.0 - cm * cm;
    const double x1s = 0.5 * (2.0 / (1.0 - c2) + 2.0 / (1.0 - c1));
    PathFormula f{};
    f.a2 = w1 * cm * x1s;
    f.a4 = w1 * x1s;
    f.a1 = w1 * cm * (end_x1 - x1s) + c1 * wm * end_x2;
    f.a3 = w1 * (end_x1 - x1s) + wm * end_x2;
    if (f.a4 <= 0 || f.a3 + f.a4 <= 0)
        throw DomainError("angle tracking: rotation cosine undefined along the path");
    return f;
}

} // namespace

double form_d(const Vec5d& u, const Vec5d& v) {
    return u[4] * v[4] - u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3];
}

Vec5d apply_d(const Mat5d& m, const Vec5d& v) {
    Vec5d out{};
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) out[a] += m[a][b] * v[b];
    return out;
}

Mat5d compose_d(const Mat5d& a, const Mat5d& b) {
    Mat5d out{};
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            for (int l = 0; l < 5; ++l) out[i][j] += a[i][l] * b[l][j];
    return out;
}

double projective_distance(const Vec5d& u, const Vec5d& v) {
    double nu = 0, nv = 0;
    for (int a = 0; a < 5; ++a) {
        nu = std::max(nu, std::abs(u[a]));
        nv = std::max(nv, std::abs(v[a]));
    }
    if (nu == 0 || nv == 0) throw DomainError("projective distance of the zero vector");
    double worst = 0;
    for (int a = 0; a < 5; ++a)
        for (int b = a + 1; b < 5; ++b)
            worst = std::max(worst, std::abs(u[a] / nu * v[b] / nv - u[b] / nu * v[a] / nv));
    return worst;
}

std::array<Vec5d, 3> corner_subspace(const NecklaceConfig& cfg, long i) {
    const Vec5d u1 = to_doubles(cfg.p_at(i));
    const Vec5d u2 = to_doubles(cfg.p_at(i + 1));
    const double g = form_d(u1, u2);
    const double det = 1.0 - g * g;
    if (std::abs(det) < 1e-12)
        throw DomainError("corner subspace: adjacent normals do not span a plane");
    // Inverse Gram of (u1, u2) under the form: [[-1, g], [g, -1]]^{-1}.
    const double i11 = -1.0 / det, i12 = -g / det;
    std::array<Vec5d, 3> basis{};
    int found = 0;
    std::array<Vec5d, 3> chosen{};
    for (int e = 0; e < 5 && found < 3; ++e) {
        Vec5d v{};
        v[e] = 1.0;
        const double b1 = form_d(v, u1), b2 = form_d(v, u2);
        const double s1 = i11 * b1 + i12 * b2;
        const double s2 = i12 * b1 + i11 * b2;
        for (int a = 0; a < 5; ++a) v[a] -= s1 * u1[a] + s2 * u2[a];
        // Euclidean Gram-Schmidt against already chosen vectors, for
        // independence only; the form restriction is evaluated afterwards.
        for (int c = 0; c < found; ++c) {
            double dot = 0, nn = 0;
            for (int a = 0; a < 5; ++a) {
                dot += v[a] * chosen[c][a];
                nn += chosen[c][a] * chosen[c][a];
            }
            for (int a = 0; a < 5; ++a) v[a] -= dot / nn * chosen[c][a];
        }
        double norm = 0;
        for (int a = 0; a < 5; ++a) norm += v[a] * v[a];
        if (norm < 1e-10) continue;
        chosen[found] = v;
        // Return the projected (non-orthogonalized) vector scaled to unit
        // Euclidean length.
        Vec5d w{};
        w[e] = 1.0;
        const double b1w = form_d(w, u1), b2w = form_d(w, u2);
        const double s1w = i11 * b1w + i12 * b2w;
        const double s2w = i12 * b1w + i11 * b2w;
        for (int a = 0; a < 5; ++a) w[a] -= s1w * u1[a] + s2w * u2[a];
        double nw = 0;
        for (int a = 0; a < 5; ++a) nw += w[a] * w[a];
        nw = std::sqrt(nw);
        for (int a = 0; a < 5; ++a) w[a] /= nw;
        basis[found] = w;
        ++found;
    }
    if (found < 3) throw DomainError("corner subspace: projection collapsed");
    return basis;
}

std::array<double, 3> corner_signature(const NecklaceConfig& cfg, long i) {
    const auto basis = corner_subspace(cfg, i);
    std::array<std::array<double, 3>, 3> gram{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) gram[a][b] = form_d(basis[a], basis[b]);
    std::array<double, 3> values{};
    std::array<std::array<double, 3>, 3> vectors{};
    jacobi3(gram, values, vectors);
    return values;
}

Vec5d ideal_point_on_corner(const NecklaceConfig& cfg) {
    const auto basis = corner_subspace(cfg, 0);
    std::array<std::array<double, 3>, 3> gram{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) gram[a][b] = form_d(basis[a], basis[b]);
    std::array<double, 3> values{};
    std::array<std::array<double, 3>, 3> vectors{};
    jacobi3(gram, values, vectors);
    if (!(values[0] < 0 && values[1] < 0 && values[2] > 0))
        throw DomainError("corner plane is not a hyperbolic plane");
    Vec5d q{};
    for (int a = 0; a < 5; ++a) {
        double pos = 0, neg = 0;
        for (int r = 0; r < 3; ++r) {
            pos += vectors[r][2] * basis[r][a];
            neg += vectors[r][0] * basis[r][a];
        }
        q[a] = pos / std::sqrt(values[2]) + neg / std::sqrt(-values[0]);
    }
    return q;
}

StringTrace trace_string(const NecklaceConfig& cfg, const Vec5d& q0) {
    const Mat5d rot = rotation_d(cfg);
    const Mat5d rinv = mat_pow(rot, cfg.n - 1);
    const Mat5d sig = sigma_d(cfg);
    StringTrace out;
    out.steps = cfg.n;
    out.points.reserve(cfg.n + 1);
    out.points.push_back(q0);
    Mat5d ri = mat_pow(rot, cfg.n);  // r^i for i = n, then decreasing
    Mat5d ri_inv = identity_d();     // r^{-i} alongside
    Vec5d q = q0;
    for (long i = cfg.n; i >= 1; --i) {
        const Mat5d si = compose_d(ri, compose_d(sig, ri_inv));
        q = apply_d(si, q);
        out.points.push_back(q);
        ri = compose_d(rinv, ri);
        ri_inv = compose_d(ri_inv, rot);
    }
    out.closure_residual = projective_distance(out.points.front(), out.points.back());
    return out;
}

std::vector<PathSample> sample_path(long k, long m, long n, double end_x1, double end_x2,
                                    long samples) {
    const PathFormula f = path_formula(k, m, n, end_x1, end_x2);
    if (samples <= 0) samples = 16 * n;
    std::vector<PathSample> out;
    out.reserve(samples + 1);
    for (long i = 0; i <= samples; ++i) {
        const double t = double(i) / double(samples);
        PathSample s;
        s.t = t;
        s.cos_a = f.at(t);
        s.a_unwrapped = std::acos(std::clamp(s.cos_a, -1.0, 1.0));
        out.push_back(s);
    }
    return out;
}

long euler_via_angle_tracking(long k, long m, long n, double end_x1, double end_x2,
                              long samples) {
    const PathFormula f = path_formula(k, m, n, end_x1, end_x2);
    const double step_angle = 2 * kPi / double(n);
    const double eps = 1e-9;
    samples = std::max(samples, 16 * n);
    for (int attempt = 0; attempt < 24; ++attempt, samples *= 2) {
        const double a_start = std::acos(std::clamp(f.at(0.0), -1.0, 1.0));
        const double a_end = std::acos(std::clamp(f.at(1.0), -1.0, 1.0));
        const bool decreasing = a_end <= a_start;
        bool separated = true;
        double prev = a_start;
        for (long i = 1; i <= samples && separated; ++i) {
            const double t = double(i) / double(samples);
            const double cur = std::acos(std::clamp(f.at(t), -1.0, 1.0));
            if ((cur > prev) != (a_end > a_start) && std::abs(cur - prev) > 1e-13)
                throw DomainError("angle tracking: non-monotone rotation angle");
            const double lo = std::min(prev, cur), hi = std::max(prev, cur);
            const long jlo = (long)std::ceil(lo / step_angle - 1e-12);
            const long jhi = (long)std::floor(hi / step_angle + 1e-12);
            if (jhi - jlo >= 1) separated = false;  // two grid values in one step
            prev = cur;
        }
        if (!separated) continue;
        // Count grid passages over (0, 1]: include the end value, exclude the
        // start value, with a small tolerance so exact endpoint hits land on
        // the intended side.
        long count = 0;
        if (decreasing) {
            const long jmin = (long)std::ceil((a_end - eps) / step_angle);
            const long jmax = (long)std::ceil((a_start - eps) / step_angle) - 1;
            count = std::max(0L, jmax - jmin + 1);
        } else {
            const long jmin = (long)std::floor((a_start + eps) / step_angle) + 1;
            const long jmax = (long)std::floor((a_end + eps) / step_angle);
            count = std::max(0L, jmax - jmin + 1);
        }
        return count;
    }
    throw DomainError("angle tracking: grid crossings could not be separated");
}

} // namespace necklace::string_oracle
