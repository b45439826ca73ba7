#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <iostream>
#include <numbers>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oppq/csv.hpp"
#include "oppq/diophantine.hpp"
#include "oppq/errors.hpp"
#include "oppq/kloosterman.hpp"
#include "oppq/numtheory.hpp"
#include "oppq/oppenheim.hpp"
#include "oppq/orbits.hpp"
#include "oppq/theta.hpp"

namespace oppq::cli {

namespace {

using json = nlohmann::json;
namespace nt = oppq::numtheory;
using oppq::csv::field;

constexpr double kPi = std::numbers::pi;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw CLI::ValidationError("empty list: " + s);
    return out;
}

double parse_const(const std::string& s) {
    if (s == "golden") return (1.0 + std::sqrt(5.0)) / 2.0;
    if (s == "sqrt2") return std::sqrt(2.0);
    if (s == "sqrt3") return std::sqrt(3.0);
    return std::stod(s);
}

sl2::Mat2i parse_mat(const std::string& s) {
    auto v = parse_list(s);
    if (v.size() != 4) throw CLI::ValidationError("matrix needs 4 entries a,b,c,d: " + s);
    return {(std::int64_t)v[0], (std::int64_t)v[1], (std::int64_t)v[2], (std::int64_t)v[3]};
}

std::vector<std::int64_t> parse_ivec(const std::string& s) {
    auto v = parse_list(s);
    std::vector<std::int64_t> out;
    for (double x : v) out.push_back((std::int64_t)std::llround(x));
    return out;
}

// Collects rows, then emits them in index order; row computation may run on
// a small async pool without affecting the output bytes.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    template <typename F>
    void fill_parallel(std::size_t n, int threads, F&& make_row) {
        rows.assign(n, {});
        if (threads <= 1 || n <= 1) {
            for (std::size_t i = 0; i < n; ++i) rows[i] = make_row(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                rows[i] = make_row(i);
            }
        };
        std::vector<std::future<void>> fs;
        for (int t = 0; t < threads; ++t) fs.push_back(std::async(std::launch::async, worker));
        for (auto& f : fs) f.get();
    }
};

struct Output {
    std::string out_path;       // empty: stdout
    std::string manifest_path;  // empty: out_path + ".manifest.json" when out_path set
    std::string command;
    json params = json::object();
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void emit(const Table& t) const {
        std::ofstream fout;
        std::ostream* os = &std::cout;
        if (!out_path.empty()) {
            fout.open(out_path, std::ios::binary);
            if (!fout) throw std::runtime_error("cannot open output file: " + out_path);
            os = &fout;
        }
        csv::Writer w(*os);
        w.header(t.header);
        for (const auto& r : t.rows) w.row(r);
        os->flush();

        std::string mpath = manifest_path;
        if (mpath.empty() && !out_path.empty()) mpath = out_path + ".manifest.json";
        if (mpath.empty()) return;
        json m;
        m["command"] = command;
        m["parameters"] = params;
        m["versions"] = kVersion;
        m["wall_time"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        m["output_paths"] = out_path.empty() ? json::array() : json::array({out_path});
        std::ofstream mf(mpath, std::ios::binary);
        if (!mf) throw std::runtime_error("cannot open manifest file: " + mpath);
        mf << m.dump(2) << "\n";
    }
};

void add_common(CLI::App* cmd, Output& o, int& threads) {
    cmd->add_option("--out", o.out_path, "output CSV path (default: stdout)");
    cmd->add_option("--manifest", o.manifest_path, "manifest JSON path");
    cmd->add_option("--threads", threads, "worker pool size for grid rows")
        ->default_val(1);
}

void record(Output& o, const CLI::App& cmd) {
    for (const CLI::Option* opt : cmd.get_options()) {
        if (opt->get_name().empty() || opt->count() == 0) continue;
        if (opt->get_name() == "--help") continue;
        auto res = opt->results();
        o.params[opt->get_name()] = res.size() == 1 ? json(res[0]) : json(res);
    }
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
    auto colon1 = spec.find(':');
    if (colon1 == std::string::npos) return parse_list(spec);
    auto colon2 = spec.find(':', colon1 + 1);
    if (colon2 == std::string::npos)
        throw CLI::ValidationError("grid must look like start:stop:log10 or start:stop:linN");
    double start = parse_const(spec.substr(0, colon1));
    double stop = parse_const(spec.substr(colon1 + 1, colon2 - colon1 - 1));
    std::string kind = spec.substr(colon2 + 1);
    std::vector<double> out;
    if (kind == "log10") {
        if (!(start > 0) || !(stop >= start))
            throw CLI::ValidationError("log10 grid needs 0 < start <= stop");
        for (double x = start; x <= stop * (1 + 1e-12); x *= 10) out.push_back(x);
        return out;
    }
    if (kind.rfind("lin", 0) == 0) {
        int n = std::stoi(kind.substr(3));
        if (n < 2) throw CLI::ValidationError("linN grid needs N >= 2");
        for (int i = 0; i < n; ++i) out.push_back(start + (stop - start) * i / (n - 1));
        return out;
    }
    throw CLI::ValidationError("unknown grid kind: " + kind);
}

namespace {

int run_impl(const std::vector<std::string>& args) {
    CLI::App app{"oppq: Kloosterman sums, Diophantine majorants, theta sums and "
                 "quadratic-form counting experiments"};
    app.require_subcommand(1);

    // ---- kloosterman ----
    Output klo_out;
    int klo_threads = 1;
    std::int64_t klo_cmax = 50, klo_N = 1;
    std::int64_t klo_mlo = -3, klo_mhi = 3, klo_nlo = -3, klo_nhi = 3;
    std::int64_t klo_m = 0, klo_n = 0, klo_c = 0;
    std::string klo_R;
    bool klo_mult = false, klo_n0 = false;
    auto* klo = app.add_subcommand("kloosterman", "evaluate or verify congruence Kloosterman sums");
    klo->add_option("--c-max", klo_cmax);
    klo->add_option("--N", klo_N);
    klo->add_option("--m-lo", klo_mlo);
    klo->add_option("--m-hi", klo_mhi);
    klo->add_option("--n-lo", klo_nlo);
    klo->add_option("--n-hi", klo_nhi);
    klo->add_option("--m", klo_m);
    klo->add_option("--n", klo_n);
    klo->add_option("--c", klo_c);
    klo->add_option("--R", klo_R, "SL(2,Z) class a,b,c,d (default: sweep all classes mod N)");
    klo->add_flag("--verify-mult", klo_mult);
    klo->add_flag("--verify-n0", klo_n0);
    add_common(klo, klo_out, klo_threads);

    // ---- weil-audit ----
    Output weil_out;
    int weil_threads = 1;
    std::int64_t weil_cmax = 100, weil_N = 1;
    std::int64_t weil_mlo = -5, weil_mhi = 5, weil_nlo = -5, weil_nhi = 5;
    std::string weil_R;
    auto* weil = app.add_subcommand("weil-audit", "ratio audit against the Weil-type bound");
    weil->add_option("--c-max", weil_cmax);
    weil->add_option("--N", weil_N);
    weil->add_option("--m-lo", weil_mlo);
    weil->add_option("--m-hi", weil_mhi);
    weil->add_option("--n-lo", weil_nlo);
    weil->add_option("--n-hi", weil_nhi);
    weil->add_option("--R", weil_R);
    add_common(weil, weil_out, weil_threads);

    // ---- b-alpha ----
    Output ba_out;
    int ba_threads = 1;
    std::string ba_alpha = "0", ba_X = "10";
    std::int64_t ba_N = 1;
    auto* ba = app.add_subcommand("b-alpha", "twisted totient sum B_alpha(X)");
    ba->add_option("--alpha", ba_alpha);
    ba->add_option("--X", ba_X);
    ba->add_option("--N", ba_N);
    add_common(ba, ba_out, ba_threads);

    // ---- delta ----
    Output dl_out;
    int dl_threads = 1;
    double dl_beta = 6;
    std::string dl_xi = "0.41421356237309515,0.7320508075688772";
    std::string dl_T = "1e1:1e4:log10", dl_variant = "full";
    double dl_tol = 1e-6;
    auto* dl = app.add_subcommand("delta", "certified majorant delta_{beta,xi}(T)");
    dl->add_option("--beta", dl_beta);
    dl->add_option("--xi", dl_xi);
    dl->add_option("--T", dl_T);
    dl->add_option("--variant", dl_variant)->check(CLI::IsMember({"full", "tilde"}));
    dl->add_option("--tol", dl_tol);
    add_common(dl, dl_out, dl_threads);

    // ---- dioph ----
    Output di_out;
    int di_threads = 1;
    std::string di_mode = "kappa_dioph", di_xi = "0.41421356237309515,0.7320508075688772";
    double di_kappa = 1, di_alpha = 1;
    std::int64_t di_bound = 100;
    auto* di = app.add_subcommand("dioph", "Diophantine quality search");
    di->add_option("--mode", di_mode)
        ->check(CLI::IsMember({"kappa_dioph", "kappa_lfd", "kappa_alpha_lfd"}));
    di->add_option("--xi", di_xi);
    di->add_option("--kappa", di_kappa);
    di->add_option("--alpha", di_alpha);
    di->add_option("--bound", di_bound);
    add_common(di, di_out, di_threads);

    // ---- cf-sum ----
    Output cf_out;
    int cf_threads = 1;
    std::string cf_eta = "golden", cf_T = "1e2:1e5:log10";
    double cf_kappa = 1, cf_c = 0.4;
    auto* cf = app.add_subcommand("cf-sum", "continued-fraction controlled sum vs its bound");
    cf->add_option("--eta", cf_eta);
    cf->add_option("--T", cf_T);
    cf->add_option("--kappa", cf_kappa);
    cf->add_option("--c", cf_c);
    add_common(cf, cf_out, cf_threads);

    // ---- orbit ----
    Output orb_out;
    int orb_threads = 1;
    std::string orb_q = "0,1", orb_r = "1,0";
    auto* orb = app.add_subcommand("orbit", "orbit class and canonical representative");
    orb->add_option("--q", orb_q);
    orb->add_option("--r", orb_r);
    add_common(orb, orb_out, orb_threads);

    // ---- theta-id ----
    Output ti_out;
    int ti_threads = 1;
    std::string ti_T = "1,5,10";
    double ti_alpha = 0, ti_beta = 0, ti_wf = 1, ti_wg = 1;
    double ti_hscale = 1, ti_hcenter = 0, ti_tol = 1e-7;
    auto* ti = app.add_subcommand("theta-id", "two-sided check of the theta lattice identity");
    ti->add_option("--T", ti_T);
    ti->add_option("--alpha", ti_alpha);
    ti->add_option("--beta", ti_beta);
    ti->add_option("--width-f", ti_wf);
    ti->add_option("--width-g", ti_wg);
    ti->add_option("--h-scale", ti_hscale);
    ti->add_option("--h-center", ti_hcenter);
    ti->add_option("--tol", ti_tol);
    add_common(ti, ti_out, ti_threads);

    // ---- equidist ----
    Output eq_out;
    int eq_threads = 1;
    std::string eq_v = "1,0.1,0.01,0.001,0.0001";
    double eq_alpha = std::sqrt(2.0) - 1, eq_beta = std::sqrt(3.0) - 1;
    double eq_wf = 1, eq_wg = 1, eq_hscale = 1, eq_hcenter = 0;
    auto* eq = app.add_subcommand("equidist", "equidistribution-limit residual table");
    eq->add_option("--v", eq_v);
    eq->add_option("--alpha", eq_alpha);
    eq->add_option("--beta", eq_beta);
    eq->add_option("--width-f", eq_wf);
    eq->add_option("--width-g", eq_wg);
    eq->add_option("--h-scale", eq_hscale);
    eq->add_option("--h-center", eq_hcenter);
    add_common(eq, eq_out, eq_threads);

    // ---- count ----
    Output cn_out;
    int cn_threads = 1;
    std::string cn_T = "250,500,1000,2000", cn_method = "fenwick";
    double cn_alpha = std::sqrt(2.0) - 1, cn_beta = std::sqrt(3.0) - 1, cn_a = 0, cn_b = 1;
    auto* cn = app.add_subcommand("count", "window counts of the inhomogeneous form");
    cn->add_option("--alpha", cn_alpha);
    cn->add_option("--beta", cn_beta);
    cn->add_option("--a", cn_a);
    cn->add_option("--b", cn_b);
    cn->add_option("--T", cn_T);
    cn->add_option("--method", cn_method)->check(CLI::IsMember({"brute", "fenwick"}));
    add_common(cn, cn_out, cn_threads);

    // ---- paircorr ----
    Output pc_out;
    int pc_threads = 1;
    std::string pc_L = "1e6";
    double pc_alpha = std::sqrt(2.0) - 1, pc_beta = std::sqrt(3.0) - 1, pc_a = 0, pc_b = 1;
    auto* pc = app.add_subcommand("paircorr", "pair correlation of the shifted spectrum");
    pc->add_option("--alpha", pc_alpha);
    pc->add_option("--beta", pc_beta);
    pc->add_option("--a", pc_a);
    pc->add_option("--b", pc_b);
    pc->add_option("--Lambda", pc_L);
    add_common(pc, pc_out, pc_threads);

    // ---- spectrum ----
    Output sp_out;
    int sp_threads = 1;
    double sp_alpha = 0, sp_beta = 0, sp_L = 100;
    std::int64_t sp_max_rows = -1;
    auto* sp = app.add_subcommand("spectrum", "sorted values (m-alpha)^2 + (n-beta)^2 < Lambda");
    sp->add_option("--alpha", sp_alpha);
    sp->add_option("--beta", sp_beta);
    sp->add_option("--Lambda", sp_L);
    sp->add_option("--max-rows", sp_max_rows);
    add_common(sp, sp_out, sp_threads);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    auto classes_or = [&](std::int64_t N, const std::string& Rspec) {
        std::vector<sl2::Mat2i> Rs;
        if (Rspec.empty()) Rs = kloosterman::residue_classes(N);
        else Rs.push_back(parse_mat(Rspec));
        return Rs;
    };

    if (*klo) {
        klo_out.command = "kloosterman";
        record(klo_out, *klo);
        Table t;
        std::int64_t failures = 0, checks = 0;
        if (klo_mult) {
            t.header = {"N", "Ra", "Rb", "Rc", "Rd", "c", "m", "n", "M1", "M2", "err"};
            for (const auto& R : classes_or(klo_N, klo_R))
                for (std::int64_t c = 1; c <= klo_cmax; ++c) {
                    if (((R.c - c) % klo_N + klo_N) % klo_N != 0) continue;
                    std::int64_t cN = c * klo_N;
                    for (std::int64_t m = klo_mlo; m <= klo_mhi; ++m)
                        for (std::int64_t n = klo_nlo; n <= klo_nhi; ++n) {
                            kloosterman::KloostermanQuery q{m, n, c, R, klo_N};
                            for (std::int64_t M1 = 1; M1 <= cN; ++M1) {
                                if (cN % M1 || std::gcd(M1, cN / M1) != 1) continue;
                                auto chk = kloosterman::multiplicativity_check(q, M1, cN / M1);
                                ++checks;
                                if (chk.err >= 1e-9) ++failures;
                                t.rows.push_back({field((long long)klo_N), field(R.a), field(R.b),
                                                  field(R.c), field(R.d), field(c), field(m),
                                                  field(n), field(M1), field(cN / M1),
                                                  field(chk.err)});
                            }
                        }
                }
        } else if (klo_n0) {
            t.header = {"N", "Ra", "Rb", "Rc", "Rd", "c", "m", "err", "value_re", "value_im", "bound_ok"};
            for (const auto& R : classes_or(klo_N, klo_R))
                for (std::int64_t c = 1; c <= klo_cmax; ++c) {
                    if (((R.c - c) % klo_N + klo_N) % klo_N != 0) continue;
                    auto u = kloosterman::u_set(c, klo_N, R.a, R.b, R.d);
                    for (std::int64_t m = klo_mlo; m <= klo_mhi; ++m) {
                        auto direct = kloosterman::kloosterman_sum(u, m, 0);
                        auto closed = kloosterman::n0_closed_form(m, c, R, klo_N);
                        double err = std::abs(direct - closed);
                        bool ok = std::abs(closed) <= double(std::gcd(c, std::llabs(m))) + 1e-9;
                        ++checks;
                        if (err >= 1e-9 || !ok) ++failures;
                        t.rows.push_back({field((long long)klo_N), field(R.a), field(R.b),
                                          field(R.c), field(R.d), field(c), field(m), field(err),
                                          field(closed.real()), field(closed.imag()),
                                          field((long long)ok)});
                    }
                }
        } else {
            if (klo_c < 1) throw CLI::ValidationError("kloosterman: --c required for --eval mode");
            sl2::Mat2i R = klo_R.empty() ? sl2::Mat2i{1, 0, 0, 1} : parse_mat(klo_R);
            kloosterman::KloostermanQuery q{klo_m, klo_n, klo_c, R, klo_N};
            auto s = kloosterman::kloosterman_sum(q);
            t.header = {"m", "n", "c", "N", "S_re", "S_im", "S_abs"};
            t.rows.push_back({field(klo_m), field(klo_n), field(klo_c), field(klo_N),
                              field(s.real()), field(s.imag()), field(std::abs(s))});
        }
        std::cerr << "kloosterman: checks=" << checks << " failures=" << failures << "\n";
        klo_out.emit(t);
        return 0;
    }

    if (*weil) {
        weil_out.command = "weil-audit";
        record(weil_out, *weil);
        std::vector<std::pair<std::int64_t, std::int64_t>> mn;
        for (std::int64_t m = weil_mlo; m <= weil_mhi; ++m)
            for (std::int64_t n = weil_nlo; n <= weil_nhi; ++n) mn.emplace_back(m, n);
        Table t;
        t.header = {"N", "Ra", "Rb", "Rc", "Rd", "max_ratio", "arg_c", "arg_m", "arg_n"};
        auto Rs = classes_or(weil_N, weil_R);
        t.fill_parallel(Rs.size(), weil_threads, [&](std::size_t i) {
            auto a = kloosterman::weil_audit(weil_cmax, weil_N, Rs[i], mn);
            return std::vector<std::string>{field((long long)weil_N), field(Rs[i].a),
                                            field(Rs[i].b), field(Rs[i].c), field(Rs[i].d),
                                            field(a.max_ratio), field(a.argmax.c),
                                            field(a.argmax.m), field(a.argmax.n)};
        });
        weil_out.emit(t);
        return 0;
    }

    if (*ba) {
        ba_out.command = "b-alpha";
        record(ba_out, *ba);
        double alpha = parse_const(ba_alpha);
        auto Xs = parse_grid(ba_X);
        Table t;
        t.header = {"X", "re", "im", "abs", "majorant", "ratio"};
        t.fill_parallel(Xs.size(), ba_threads, [&](std::size_t i) {
            auto r = kloosterman::b_alpha_sum(alpha, (std::int64_t)std::llround(Xs[i]), ba_N);
            double ab = std::abs(r.value);
            return std::vector<std::string>{field(Xs[i]), field(r.value.real()),
                                            field(r.value.imag()), field(ab), field(r.majorant),
                                            field(ab / r.majorant)};
        });
        ba_out.emit(t);
        return 0;
    }

    if (*dl) {
        dl_out.command = "delta";
        record(dl_out, *dl);
        auto xi = parse_list(dl_xi);
        auto Ts = parse_grid(dl_T);
        auto variant = dl_variant == "full" ? dioph::MajorantVariant::Full
                                            : dioph::MajorantVariant::Tilde;
        Table t;
        t.header = {"T", "value", "tail_bound", "R_cut", "J_cut"};
        t.fill_parallel(Ts.size(), dl_threads, [&](std::size_t i) {
            auto r = dioph::delta_majorant(dl_beta, xi, Ts[i], dl_tol, variant);
            return std::vector<std::string>{field(Ts[i]), field(r.value), field(r.tail_bound),
                                            field((long long)r.R_cut), field(r.J_cut)};
        });
        dl_out.emit(t);
        return 0;
    }

    if (*di) {
        di_out.command = "dioph";
        record(di_out, *di);
        auto xi = parse_list(di_xi);
        dioph::DiophMode mode = di_mode == "kappa_dioph" ? dioph::DiophMode::KappaDioph
                                : di_mode == "kappa_lfd" ? dioph::DiophMode::KappaLFD
                                                          : dioph::DiophMode::KappaAlphaLFD;
        auto r = dioph::dioph_quality(mode, xi, di_kappa, di_alpha, di_bound);
        Table t;
        t.header = {"mode", "kappa", "alpha", "bound", "min_quality", "obstruction", "witness_j",
                    "witness_r"};
        std::string wr;
        for (std::size_t i = 0; i < r.witness_r.size(); ++i)
            wr += (i ? "," : "") + std::to_string(r.witness_r[i]);
        t.rows.push_back({di_mode, field(di_kappa), field(di_alpha), field(di_bound),
                          field(r.min_quality), field((long long)r.obstruction),
                          field(r.witness_j), wr});
        di_out.emit(t);
        return 0;
    }

    if (*cf) {
        cf_out.command = "cf-sum";
        record(cf_out, *cf);
        double eta = parse_const(cf_eta);
        auto Ts = parse_grid(cf_T);
        Table t;
        t.header = {"T", "lhs", "bound", "ratio", "tail", "hypothesis_ok", "violating_j"};
        t.fill_parallel(Ts.size(), cf_threads, [&](std::size_t i) {
            auto r = dioph::cf_sum(eta, Ts[i], cf_kappa, cf_c);
            return std::vector<std::string>{field(Ts[i]), field(r.lhs), field(r.bound),
                                            field(r.ratio), field(r.tail),
                                            field((long long)r.hypothesis_ok),
                                            field(r.violating_j)};
        });
        cf_out.emit(t);
        return 0;
    }

    if (*orb) {
        orb_out.command = "orbit";
        record(orb_out, *orb);
        auto q = parse_ivec(orb_q), r = parse_ivec(orb_r);
        auto cls = orbits::classify_orbit(q, r);
        Table t;
        t.header = {"class", "l1", "l2", "rep_q", "rep_r", "transform"};
        std::string cname = cls == orbits::OrbitClass::Zero ? "Zero"
                            : cls == orbits::OrbitClass::A  ? "A"
                                                             : "B";
        auto join = [](const std::vector<std::int64_t>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
            return s;
        };
        if (cls == orbits::OrbitClass::B) {
            auto rep = orbits::canonical_b_rep(q, r);
            t.rows.push_back({cname, field((long long)rep.l1), field((long long)rep.l2),
                              join(rep.rep.q), join(rep.rep.r),
                              join({rep.transform.a, rep.transform.b, rep.transform.c,
                                    rep.transform.d})});
        } else {
            t.rows.push_back({cname, "", "", join(q), join(r), ""});
        }
        orb_out.emit(t);
        return 0;
    }

    if (*ti) {
        ti_out.command = "theta-id";
        record(ti_out, *ti);
        auto Ts = parse_grid(ti_T);
        theta::GaussianProfile f{2, ti_wf}, g{2, ti_wg};
        theta::WindowGaussian h{ti_hscale, ti_hcenter, 1.0};
        oppenheim::ShiftVector shift{ti_alpha, ti_beta};
        Table t;
        t.header = {"T", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "diff"};
        t.fill_parallel(Ts.size(), ti_threads, [&](std::size_t i) {
            auto r = oppenheim::theta_identity_check(f, g, h, Ts[i], shift, ti_tol);
            return std::vector<std::string>{field(Ts[i]), field(r.lhs.real()),
                                            field(r.lhs.imag()), field(r.rhs.real()),
                                            field(r.rhs.imag()), field(r.diff)};
        });
        ti_out.emit(t);
        return 0;
    }

    if (*eq) {
        eq_out.command = "equidist";
        record(eq_out, *eq);
        auto vs = parse_grid(eq_v);
        theta::GaussianProfile f{2, eq_wf}, g{2, eq_wg};
        theta::WindowGaussian h{eq_hscale, eq_hcenter, 1.0};
        auto rows = oppenheim::equidist_experiment(f, g, h, {eq_alpha, eq_beta}, vs);
        Table t;
        t.header = {"v", "lhs", "main_term", "second_term", "residual"};
        for (const auto& r : rows)
            t.rows.push_back({field(r.v), field(r.lhs), field(r.main_term),
                              field(r.second_term), field(r.residual)});
        eq_out.emit(t);
        return 0;
    }

    if (*cn) {
        cn_out.command = "count";
        record(cn_out, *cn);
        auto Ts = parse_grid(cn_T);
        oppenheim::ShiftVector shift{cn_alpha, cn_beta};
        auto method = cn_method == "brute" ? oppenheim::CountMethod::Brute
                                            : oppenheim::CountMethod::Fenwick;
        double target = kPi * kPi / 2.0 * (cn_b - cn_a);
        Table t;
        t.header = {"T", "N", "target", "abs_err"};
        t.fill_parallel(Ts.size(), cn_threads, [&](std::size_t i) {
            double N = oppenheim::count_window(shift, {cn_a, cn_b, Ts[i]}, method);
            return std::vector<std::string>{field(Ts[i]), field(N), field(target),
                                            field(std::fabs(N - target))};
        });
        cn_out.emit(t);
        return 0;
    }

    if (*pc) {
        pc_out.command = "paircorr";
        record(pc_out, *pc);
        auto Ls = parse_grid(pc_L);
        oppenheim::ShiftVector shift{pc_alpha, pc_beta};
        double target = kPi * (pc_b - pc_a);
        Table t;
        t.header = {"Lambda", "R2", "target", "abs_err"};
        t.fill_parallel(Ls.size(), pc_threads, [&](std::size_t i) {
            double r2 = oppenheim::pair_correlation(shift, pc_a, pc_b, Ls[i]);
            return std::vector<std::string>{field(Ls[i]), field(r2), field(target),
                                            field(std::fabs(r2 - target))};
        });
        pc_out.emit(t);
        return 0;
    }

    if (*sp) {
        sp_out.command = "spectrum";
        record(sp_out, *sp);
        auto s = oppenheim::spectrum({sp_alpha, sp_beta}, sp_L);
        Table t;
        t.header = {"j", "lambda_j"};
        std::size_t n = s.values.size();
        if (sp_max_rows >= 0) n = std::min(n, std::size_t(sp_max_rows));
        for (std::size_t i = 0; i < n; ++i)
            t.rows.push_back({field((long long)(i + 1)), field(s.values[i])});
        sp_out.emit(t);
        return 0;
    }

    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    try {
        return run_impl(args);
    } catch (const oppq::budget_error& e) {
        std::cerr << "budget error: " << e.what() << " (achieved " << e.achieved() << ")\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace oppq::cli
