// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion re-derives its expected values from independent
// oracles (brute-force enumeration, Sylvester determinants, full scans).
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ffk/cli.hpp"
#include "ffk/homotopy.hpp"
#include "ffk/jsonio.hpp"
#include "ffk/oracle.hpp"
#include "ffk/ratpoint.hpp"
#include "ffk/rings.hpp"

using namespace ffk;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

struct SuiteSystem {
    std::string name;
    std::string body;   // vars+polys, field line prepended per prime
    size_t r;
};

std::string system_text(const SuiteSystem& s, u64 p) {
    return "field p=" + std::to_string(p) + " ext=1\n" + s.body;
}

const std::vector<SuiteSystem>& stage_suite() {
    static const std::vector<SuiteSystem> suite = {
        {"circle", "vars X1 X2\npoly X1^2 + X2^2 - 1\n", 1},
        {"ellipse", "vars X1 X2\npoly X1^2 + 2*X2^2 - 1\n", 1},
        {"parabola", "vars X1 X2\npoly X2^2 - X1\n", 1},
        {"cubic", "vars X1 X2\npoly X2^3 + X1^3 - 1\n", 1},
        {"sphere", "vars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n", 1},
        {"quadpair", "vars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\npoly X1*X2 - X3\n", 2},
        {"model", "vars X1 X2 X3\npoly X3^2 - X1 - X2\npoly X2^2 - X1\n", 2},
        {"twisted", "vars X1 X2 X3\npoly X1^2 - X2\npoly X2^2 - X3\n", 2},
        {"circleline", "vars X1 X2\npoly X1^2 + X2^2 - 1\npoly X2 - X1\n", 2},
    };
    return suite;
}

std::vector<LiftingFiber> run_stages(const SolverState& st, Rng& rng) {
    std::vector<LiftingFiber> fibers;
    fibers.push_back(init_base_fiber(st));
    for (size_t s = 1; s < st.r; ++s)
        fibers.push_back(advance_stage(st, fibers.back(), rng, nullptr));
    return fibers;
}

bool retriable(const Error& e) {
    switch (e.code()) {
        case Err::BadRandomChoice:
        case Err::LiftDiverged:
        case Err::UnluckyLambda:
        case Err::UnluckyCenter:
        case Err::NonLinearGcd:
        case Err::ZeroDivisorHit:
        case Err::ValidationFailed:
        case Err::NotLiftingPoint:
            return true;
        default:
            return false;
    }
}

// ---------------------------------------------------------------- criterion 1
bool criterion_oracle_equivalence(std::string& note) {
    const std::vector<u64> primes{11, 13, 17, 19, 23, 29, 31};
    size_t comparisons = 0, mismatches = 0, systems_covered = 0;
    Timer timer;
    for (auto& sys : stage_suite()) {
        bool covered = false;
        for (u64 p : primes) {
            // two-equation systems scan quadratic extensions squared; keep
            // the largest primes for the cheap single-equation systems
            if (sys.r >= 2 && p > 23) continue;
            if (timer.seconds() > 40 && covered) break;
            auto ps = parse_system(system_text(sys, p));
            long bezout = 1;
            for (auto d : ps.degrees) bezout *= d;
            SolveConfig cfg;
            cfg.k_override = 1;
            // deterministic seed search for an instance whose fibers both
            // validate and stay inside the oracle's scan budget
            bool instance_done = false;
            for (u64 attempt = 0; attempt < 24 && !instance_done; ++attempt) {
                Rng rng(1000 * p + attempt);
                SolverState st = make_solver_state(ps, cfg, rng);
                resample_genericity(st, rng);
                std::vector<LiftingFiber> fibers;
                try {
                    fibers = run_stages(st, rng);
                } catch (const Error& e) {
                    if (retriable(e)) continue;
                    throw;
                }
                // oracle comparison per stage; skip the attempt if the scan
                // cannot certify the full fiber
                std::vector<std::pair<DensePoly, const LiftingFiber*>> checked;
                bool oracle_ok = true;
                for (auto& fb : fibers) {
                    long stage_bezout = 1;
                    for (int i = 0; i < fb.stage; ++i) stage_bezout *= ps.degrees[(size_t)i];
                    try {
                        Rng orng(17 + attempt);
                        auto oq = oracle::fiber_minimal_polynomial(
                            st.system, (size_t)fb.stage, fb.forms, fb.lifting_point,
                            fb.primitive, 1, orng);
                        if (oq.degree() != stage_bezout) {
                            oracle_ok = false;   // scan missed conjugate points
                            break;
                        }
                        checked.push_back({oq, &fb});
                    } catch (const Error& e) {
                        if (e.code() == Err::TooLarge || e.code() == Err::CountUnstable ||
                            e.code() == Err::RetriesExhausted) {
                            oracle_ok = false;
                            break;
                        }
                        throw;
                    }
                }
                if (!oracle_ok) continue;
                for (auto& [oq, fbp] : checked) {
                    ++comparisons;
                    if (!(oq == fbp->q && oq.degree() == fbp->q.degree())) ++mismatches;
                }
                instance_done = true;
                covered = true;
            }
        }
        if (covered) ++systems_covered;
    }
    std::ostringstream os;
    os << comparisons << " fiber comparisons over " << systems_covered << "/"
       << stage_suite().size() << " systems, " << mismatches << " mismatches, "
       << (int)timer.seconds() << " s";
    note = os.str();
    return mismatches == 0 && comparisons >= 30 && systems_covered == stage_suite().size() &&
           timer.seconds() < 60;
}

// ---------------------------------------------------------------- criterion 2
bool criterion_success_rate(std::string& note) {
    struct EndToEnd {
        std::string name;
        std::string text;
    };
    const std::vector<EndToEnd> suite = {
        {"sphere/10007",
         "field p=10007 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n"},
        {"ellipsoid/10007",
         "field p=10007 ext=1\nvars X1 X2 X3\npoly X1^2 + 2*X2^2 + 3*X3^2 - 1\n"},
        {"parabola3/2503", "field p=2503 ext=1\nvars X1 X2 X3\npoly X2 - X1^2\n"},
        {"sphere4/10007",
         "field p=10007 ext=1\nvars X1 X2 X3 X4\npoly X1^2 + X2^2 + X3^2 + X4^2 - 1\n"},
        {"quadpair/65537",
         "field p=65537 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\npoly X1*X2 - X3\n"},
        {"modelcurve/65537",
         "field p=65537 ext=1\nvars X1 X2 X3\npoly X3^2 - X1 - X2\npoly X2^2 - X1\n"},
    };
    Timer timer;
    std::ostringstream os;
    bool ok = true;
    for (auto& sys : suite) {
        auto ps = parse_system(sys.text);
        int success = 0, bad_residual = 0;
        for (u64 seed = 0; seed < 100; ++seed) {
            SolveConfig cfg;
            Rng rng(seed);
            try {
                auto res = compute_rational_point(ps, cfg, rng);
                bool zero = true;
                for (auto& rv : res.point.residuals)
                    if (!rv.is_zero()) zero = false;
                if (zero) ++success;
                else ++bad_residual;
            } catch (const Error& e) {
                if (e.code() != Err::RetriesExhausted) throw;
            }
        }
        os << sys.name << ":" << success << "% ";
        if (success < 55 || bad_residual > 0) ok = false;
    }
    os << "(" << (int)timer.seconds() << " s)";
    note = os.str();
    return ok && timer.seconds() < 600;
}

// ---------------------------------------------------------------- criterion 3
bool criterion_weil(std::string& note) {
    struct SliceSys {
        std::string text;
        u64 q;
    };
    const std::vector<SliceSys> suite = {
        {"field p=101 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n", 101},
        {"field p=97 ext=1\nvars X1 X2 X3\npoly X1^2 + 2*X2^2 + 3*X3^2 - 1\n", 97},
    };
    Timer timer;
    size_t slices = 0, violations = 0, produced = 0;
    for (auto& sys : suite) {
        auto ps = parse_system(sys.text);
        SolveConfig cfg;
        cfg.enforce_field_bound = false;
        Rng rng(3);
        auto solved = solve_to_lifting_fiber(ps, cfg, rng);
        SolverState& st = solved.state;
        // a homotopy path that reaches a base-field fiber
        LiftingFiber zf;
        HomotopyPath path;
        bool have = false;
        for (unsigned t = 0; t < 32 && !have; ++t) {
            path = sample_homotopy_end(st, rng);
            try {
                auto fq = deform_fiber_to_base_field(st, solved.fiber, path);
                zf = change_primitive_element(st, fq, path);
                have = true;
            } catch (const Error& e) {
                if (e.code() == Err::PathHitsDiscriminant || e.code() == Err::NotSeparating)
                    continue;
                throw;
            }
        }
        if (!have) {
            note = "no homotopy path found";
            return false;
        }
        const long delta = zf.q.degree();
        for (unsigned ow = 0; slices < 5 * (size_t)(&sys - &suite[0] + 1) && ow < 40; ++ow) {
            Vec omega;
            for (size_t i = 0; i < st.n - st.r; ++i) omega.push_back(sample_uniform(st.base, rng));
            PlaneSlice slice;
            try {
                slice = slice_to_plane_curve(st, zf, path, omega);
            } catch (const Error& e) {
                if (e.code() == Err::LiftDiverged) continue;
                throw;
            }
            // Weil's inequality presumes absolute irreducibility; at this
            // small q a fraction of slice directions genuinely produces a
            // split conic, which the inequality cannot bound. For the
            // degree-2 slices of this suite, absolute irreducibility is
            // decided exactly by the Z-discriminant not being a square.
            if (slice.h.degree_y() != 2) continue;
            DensePoly b = slice.h.coeff(1), c = slice.h.coeff(0);
            DensePoly disc = b * b - c * DensePoly::from_ints(st.base, {4});
            ++produced;
            // h splits over the closure exactly when the discriminant is a
            // square there, i.e. every factor multiplicity is even
            bool split = disc.is_zero();
            if (!split) {
                Rng frng(9);
                bool all_even = true;
                for (auto& [fac, mult] : upoly::factor(disc, frng))
                    if (fac.degree() > 0 && mult % 2 != 0) all_even = false;
                split = all_even;
            }
            if (split) continue;   // split or non-reduced conic: Weil does not apply
            long count = oracle::count_curve_points(slice.h, st.base);
            ++slices;
            // |N - q| <= delta^2 sqrt(q), squared to stay integer-exact
            long diff = count - (long)sys.q;
            unsigned long long lhs = (unsigned long long)(diff * diff);
            unsigned long long rhs =
                (unsigned long long)(delta * delta) * (unsigned long long)(delta * delta) *
                sys.q;
            if (lhs > rhs) ++violations;
        }
    }
    std::ostringstream os;
    os << slices << " irreducible slices of " << produced << " produced, " << violations
       << " Weil violations, " << (int)timer.seconds() << " s";
    note = os.str();
    // the reducible fraction must stay a small minority or the slice
    // machinery itself is suspect
    return slices >= 10 && violations == 0 && slices * 2 > produced && timer.seconds() < 30;
}

// ---------------------------------------------------------------- criterion 4
// independent residual re-evaluation of curve lifts over the series quotient
bool curve_residuals_exactly_zero(const SolverState& st, const GeometricSolutionCurve& curve,
                                  const FieldElement& free_center) {
    const Field& K = st.K;
    const size_t n = st.n, m = curve.primitive;
    const unsigned delta = (unsigned)curve.q.degree_y();
    const unsigned prec = delta + 1;
    Bivar q_local = curve.q.shift_free(free_center);   // back to series coordinates
    SeriesPoly qs = q_local.to_series_poly(FieldElement::zero(K), prec);
    SeriesPoly es = series_rem(q_local.derivative_y().to_series_poly(FieldElement::zero(K), prec), qs);
    auto inv_e = series_quot_invert(es, qs);
    if (!inv_e) return false;
    const FieldElement center = FieldElement::zero(K);
    SeriesQuotOps ops{&st.emb, qs};
    std::vector<SeriesPoly> yvals(n, SeriesPoly::zero(K, center, prec));
    for (size_t j = 0; j + 1 < m; ++j)
        yvals[j] =
            SeriesPoly(center, prec, {TruncatedSeries::constant(curve.base_point[j], center, prec)});
    std::vector<FieldElement> tc(prec, FieldElement::zero(K));
    tc[0] = free_center;
    if (prec >= 2) tc[1] = FieldElement::one(K);
    yvals[m - 1] = SeriesPoly(center, prec, {TruncatedSeries(center, tc)});
    yvals[m] = SeriesPoly::y(K, center, prec);
    for (size_t j = 0; j < curve.v.size(); ++j) {
        SeriesPoly vs = series_rem(
            curve.v[j].shift_free(free_center).to_series_poly(center, prec), qs);
        yvals[m + 1 + j] = series_rem(vs * *inv_e, qs);
    }
    const Matrix& minv = curve.forms.inverse_matrix();
    const Vec& shift = curve.forms.shift();
    std::vector<SeriesPoly> x(n, SeriesPoly::zero(K, center, prec));
    for (size_t i = 0; i < n; ++i) {
        SeriesPoly acc = SeriesPoly::zero(K, center, prec);
        for (size_t j = 0; j < n; ++j) {
            if (minv[i][j].is_zero()) continue;
            SeriesPoly t =
                yvals[j] - SeriesPoly(center, prec, {TruncatedSeries::constant(shift[j], center, prec)});
            acc = acc + t.scale(TruncatedSeries::constant(minv[i][j], center, prec));
        }
        x[i] = series_rem(acc, qs);
    }
    for (int i = 0; i < curve.stage; ++i)
        if (!st.system[(size_t)i].eval(x, ops)[0].is_zero()) return false;
    return true;
}

bool criterion_lifting_exactness(std::string& note) {
    Timer timer;
    size_t curves = 0, fibers = 0, failures = 0;
    const std::vector<u64> primes{13, 10007};
    for (auto& sys : stage_suite()) {
        for (u64 p : primes) {
            auto ps = parse_system(system_text(sys, p));
            SolveConfig cfg;
            if (p <= 31) cfg.k_override = 1;
            bool done = false;
            for (u64 attempt = 0; attempt < 24 && !done; ++attempt) {
                Rng rng(7000 + 100 * p + attempt);
                SolverState st = make_solver_state(ps, cfg, rng);
                resample_genericity(st, rng);
                try {
                    auto fb = init_base_fiber(st);
                    for (size_t s = 1;; ++s) {
                        // a fiber with no free coordinate has no lifting curve
                        if (fb.primitive >= 1) {
                            auto curve = lift_fiber_to_curve(st, fb);
                            ++curves;
                            if (!curve_residuals_exactly_zero(
                                    st, curve, fb.lifting_point[fb.primitive - 1]))
                                ++failures;
                        }
                        if (s >= st.r) break;
                        fb = advance_stage(st, fb, rng, nullptr);
                        auto rep = validate_fiber(fb, st.system, st.emb);
                        ++fibers;
                        if (!rep.parametrization_residuals_zero) ++failures;
                    }
                    done = true;
                } catch (const Error& e) {
                    if (retriable(e)) continue;
                    throw;
                }
            }
        }
    }
    std::ostringstream os;
    os << curves << " curve lifts and " << fibers
       << " recombined fibers re-checked, " << failures << " nonzero residuals, "
       << (int)timer.seconds() << " s";
    note = os.str();
    return failures == 0 && curves >= 12;
}

// ---------------------------------------------------------------- criterion 5
FieldElement sylvester_resultant(const DensePoly& f, const DensePoly& g) {
    const Field& fld = f.field();
    int m = f.degree(), n = g.degree();
    int size = m + n;
    if (size == 0) return FieldElement::one(fld);
    std::vector<std::vector<FieldElement>> a(
        (size_t)size, std::vector<FieldElement>((size_t)size, FieldElement::zero(fld)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) a[(size_t)i][(size_t)(i + j)] = f.coeff((size_t)(m - j));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) a[(size_t)(n + i)][(size_t)(i + j)] = g.coeff((size_t)(n - j));
    FieldElement det = FieldElement::one(fld);
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int row = col; row < size; ++row)
            if (!a[(size_t)row][(size_t)col].is_zero()) {
                piv = row;
                break;
            }
        if (piv < 0) return FieldElement::zero(fld);
        if (piv != col) {
            std::swap(a[(size_t)piv], a[(size_t)col]);
            det = -det;
        }
        det *= a[(size_t)col][(size_t)col];
        FieldElement ip = invert(a[(size_t)col][(size_t)col]);
        for (int row = col + 1; row < size; ++row) {
            if (a[(size_t)row][(size_t)col].is_zero()) continue;
            FieldElement fac = a[(size_t)row][(size_t)col] * ip;
            for (int j = col; j < size; ++j)
                a[(size_t)row][(size_t)j] -= fac * a[(size_t)col][(size_t)j];
        }
    }
    return det;
}

DensePoly random_poly(const Field& f, int max_deg, Rng& rng) {
    int d = (int)rng.below((u64)max_deg + 1);
    std::vector<FieldElement> c;
    for (int i = 0; i <= d; ++i) c.push_back(sample_uniform(f, rng));
    DensePoly r(f, std::move(c));
    if (r.is_zero()) return DensePoly::constant(FieldElement::one(f));
    return r;
}

bool criterion_kernel_oracles(std::string& note) {
    Timer timer;
    size_t bad = 0;
    // resultants vs Sylvester determinants
    Rng r9seed(13);
    std::vector<Field> res_fields{make_prime_field(7), make_prime_field(101),
                                  make_field(3, 2, r9seed)};
    Rng rng(2024);
    for (int i = 0; i < 500; ++i) {
        const Field& f = res_fields[(size_t)(i % 3)];
        auto a = random_poly(f, 6, rng);
        auto b = random_poly(f, 6, rng);
        if (upoly::resultant(a, b) != sylvester_resultant(a, b)) ++bad;
    }
    // roots vs brute force over every suite field with q <= 61
    std::vector<Field> root_fields;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 31ull, 61ull})
        root_fields.push_back(make_prime_field(p));
    {
        Rng r(5);
        root_fields.push_back(make_field(3, 2, r));
        root_fields.push_back(make_field(7, 2, r));
    }
    for (auto& f : root_fields) {
        for (int rep = 0; rep < 60; ++rep) {
            auto g = random_poly(f, 5, rng);
            if (g.degree() < 1) continue;
            auto fast = upoly::roots_in_field(g, rng);
            std::vector<FieldElement> slow;
            std::vector<u64> idx(f->k, 0);
            while (true) {
                FieldElement x(f, idx);
                if (g.eval(x).is_zero()) slow.push_back(x);
                unsigned pos = 0;
                while (pos < f->k && ++idx[pos] == f->p) idx[pos++] = 0;
                if (pos == f->k) break;
            }
            std::sort(slow.begin(), slow.end(),
                      [](const FieldElement& a, const FieldElement& b) {
                          return a.coeffs() < b.coeffs();
                      });
            if (!(fast == slow)) ++bad;
        }
    }
    // factorization re-multiplication identity
    for (int i = 0; i < 200; ++i) {
        const Field& f = res_fields[(size_t)(i % 3)];
        auto g = random_poly(f, 10, rng);
        if (g.degree() < 1) continue;
        auto fac = upoly::factor(g, rng);
        DensePoly prod = DensePoly::constant(FieldElement::one(f));
        for (auto& [h, mult] : fac)
            for (unsigned j = 0; j < mult; ++j) prod = prod * h;
        if (!(prod == upoly::monic(g))) ++bad;
    }
    std::ostringstream os;
    os << "500 resultants + 200 factorizations + root scans, " << bad << " disagreements, "
       << (int)timer.seconds() << " s";
    note = os.str();
    return bad == 0 && timer.seconds() < 60;
}

// ---------------------------------------------------------------- criterion 6
bool criterion_determinism(std::string& note) {
    auto write_temp = [](const std::string& name, const std::string& content) {
        std::string path = "/tmp/ffk_acc_" + name;
        std::ofstream f(path);
        f << content;
        return path;
    };
    auto capture = [](std::vector<std::string> args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return std::make_pair(code, out.str());
    };
    std::vector<std::pair<std::string, std::vector<std::string>>> cases;
    auto sphere = write_temp("sphere.sys",
                             "field p=10007 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\n");
    auto quad = write_temp(
        "quad.sys",
        "field p=65537 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + X3^2 - 1\npoly X1*X2 - X3\n");
    auto circle =
        write_temp("circle.sys", "field p=7 ext=1\nvars X1 X2\npoly X1^2 + X2^2 - 1\n");
    cases.push_back({"solve sphere", {"solve", sphere, "--seed", "42"}});
    cases.push_back({"solve quad", {"solve", quad, "--seed", "7"}});
    cases.push_back({"geosol sphere", {"geosol", sphere, "--seed", "3"}});
    cases.push_back({"oracle circle", {"oracle", circle}});
    size_t bad = 0;
    for (auto& [name, args] : cases) {
        auto a = capture(args);
        auto b = capture(args);
        if (a.first != 0 || a != b) ++bad;
    }
    note = std::to_string(cases.size()) + " command pairs hashed";
    return bad == 0;
}

// ---------------------------------------------------------------- criterion 7
bool criterion_negative_controls(std::string& note) {
    size_t bad = 0;
    // circle curve specialized at the ramified value 1
    {
        auto f7 = make_prime_field(7);
        GeometricSolutionCurve curve;
        curve.K = f7;
        curve.forms = LinearForms::identity(f7, 2);
        curve.free_index = 0;
        curve.primitive = 1;
        curve.stage = 1;
        curve.q = Bivar(f7, {DensePoly::from_ints(f7, {-1, 0, 1}), DensePoly::zero(f7),
                             DensePoly::constant(FieldElement::one(f7))});
        try {
            specialize_to_fiber(curve, FieldElement::one(f7));
            ++bad;
        } catch (const Error& e) {
            if (e.code() != Err::NotLiftingPoint) ++bad;
        }
    }
    auto run_expect = [&](const std::string& content, int expect_code,
                          const std::string& expect_msg) {
        std::string path = "/tmp/ffk_acc_neg.sys";
        {
            std::ofstream f(path);
            f << content;
        }
        std::ostringstream out, err;
        int code = run_cli({"solve", path, "--seed", "1"}, out, err);
        if (code != expect_code || err.str().find(expect_msg) == std::string::npos) ++bad;
    };
    // F_i = 1 is inconsistent
    run_expect("field p=10007 ext=1\nvars X1 X2 X3\npoly 1\n", 2, "InconsistentSystem");
    // cardinality below the bound trips the gate with the bound printed
    run_expect("field p=3 ext=1\nvars X1 X2 X3\npoly X1^2 + X2^2 + 1\n", 2,
               "8*n^2*d*delta_r^4");
    note = bad == 0 ? "all three controls fired" : std::to_string(bad) + " controls misfired";
    return bad == 0;
}

} // namespace

int main() {
    struct Row {
        int id;
        const char* name;
        bool (*fn)(std::string&);
    };
    const Row rows[] = {
        {1, "oracle equivalence of geometric solutions", criterion_oracle_equivalence},
        {2, "end-to-end success rate >= 55% with exact residuals", criterion_success_rate},
        {3, "Weil sanity for pipeline plane slices", criterion_weil},
        {4, "lifting exactness (residuals identically zero)", criterion_lifting_exactness},
        {5, "kernel oracles (resultant, roots, factor)", criterion_kernel_oracles},
        {6, "byte-identical CLI output per seed", criterion_determinism},
        {7, "negative controls", criterion_negative_controls},
    };
    int failures = 0;
    for (auto& row : rows) {
        Timer t;
        std::string note;
        bool ok = false;
        try {
            ok = row.fn(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (!ok) ++failures;
        std::cout << (ok ? "PASS" : "FAIL") << " criterion " << row.id << ": " << row.name
                  << " [" << note << "] (" << (int)(t.seconds() * 1000) << " ms)" << std::endl;
    }
    if (failures) std::cout << failures << " criterion(s) failed" << std::endl;
    else std::cout << "all acceptance criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
