// Command-line front end: every subsystem behind one binary with JSON output.
// Exit codes: 0 success, 2 parse/usage error, 3 mathematical assertion
// failure, 4 inconclusive certification.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

#include "cresym/classexpr.hpp"
#include "cresym/cremona.hpp"
#include "cresym/degeneration.hpp"
#include "cresym/gw.hpp"
#include "cresym/intersection.hpp"
#include "cresym/lattice.hpp"
#include "cresym/tower.hpp"

using json = nlohmann::ordered_json;
using namespace cresym;

namespace {

struct CmdError : std::runtime_error {
    int code;
    std::string step;
    CmdError(int code_, std::string step_, const std::string& detail)
        : std::runtime_error(detail), code(code_), step(std::move(step_)) {}
};

std::string zstr(const mpz_class& v) { return v.get_str(); }

json zvec(const std::vector<mpz_class>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(zstr(x));
    return a;
}

json fan_json(const StageFan& sf) {
    json out;
    out["dim"] = sf.fan.dim;
    out["rays"] = json::array();
    for (const auto& r : sf.fan.rays) out["rays"].push_back(r);
    out["max_cones"] = json::array();
    for (const auto& c : sf.fan.max_cones) out["max_cones"].push_back(c);
    json labels;
    for (size_t i = 0; i < sf.ray_labels.size(); ++i)
        labels[std::to_string(i)] = subset_elements(sf.ray_labels[i]);
    out["labels"] = std::move(labels);
    return out;
}

StageFan fan_from_json(const json& j) {
    StageFan sf;
    sf.fan.dim = j.at("dim").get<int>();
    for (const auto& r : j.at("rays")) sf.fan.rays.push_back(r.get<LatticeVector>());
    for (const auto& c : j.at("max_cones")) sf.fan.max_cones.push_back(c.get<Cone>());
    sf.n = sf.fan.dim;
    sf.stage = -2;  // unknown provenance
    if (j.contains("labels"))
        for (size_t i = 0; i < sf.fan.rays.size(); ++i) {
            auto it = j.at("labels").find(std::to_string(i));
            sf.ray_labels.push_back(it != j.at("labels").end()
                                        ? subset_of(it->get<std::vector<int>>())
                                        : 0u);
        }
    return sf;
}

/* A point class d*h - sum a_i e_i from a curve expression. */
struct PointClass {
    mpz_class d;
    std::vector<mpz_class> a;  // indexed by Theorem-1.1 point, length m
    int m = 0;
};

PointClass point_class_from_expr(const std::string& text, int n, int m_flag) {
    ClassExpr ex = parse_class_expr(text, n);
    if (ex.divisor_side) throw CmdError(2, "class", "expected a curve class (h/e tokens)");
    for (const auto& [g, c] : ex.coeff_center)
        if (c != 0 && subset_size(g) >= 2)
            throw CmdError(2, "class", "class must be supported on h and point classes e_i");
    PointClass pc;
    pc.d = ex.coeff_h;
    pc.m = std::max(n + 1, std::max(ex.max_point(), m_flag));
    pc.a.assign(pc.m, 0);
    for (const auto& [g, c] : ex.coeff_center)
        if (c != 0) pc.a[subset_elements(g)[0]] = -c;
    for (const auto& [i, c] : ex.coeff_extra)
        if (c != 0) pc.a[i - 1] = -c;
    return pc;
}

ZVec expr_to_coords(const ClassExpr& ex, const StageBasis& basis) {
    ZVec v(basis.dim(), 0);
    v[0] = ex.coeff_h;
    for (const auto& [g, c] : ex.coeff_center) {
        if (c == 0) continue;
        int idx = basis.center_index(g);
        if (idx < 0) throw CmdError(2, "class", "center " + subset_str(g) + " absent at this stage");
        v[idx] += c;
    }
    for (const auto& [i, c] : ex.coeff_extra) {
        if (c == 0) continue;
        int idx = basis.point_index(i);
        if (idx < 0) throw CmdError(2, "class", "extra point " + std::to_string(i) + " outside basis");
        v[idx] += c;
    }
    return v;
}

void emit(const json& j) { std::cout << j.dump() << std::endl; }

int fail_with(int code, const std::string& step, const std::string& detail) {
    json err;
    err["error"]["step"] = step;
    err["error"]["detail"] = detail;
    emit(err);
    return code;
}

std::string membership_str(MoriMembership m) {
    switch (m) {
        case MoriMembership::Interior: return "interior";
        case MoriMembership::Boundary: return "boundary";
        default: return "outside";
    }
}

json cert_json(const CertResult& res) {
    json out;
    out["status"] = res.status == CertStatus::Certified ? "certified" : "inconclusive";
    out["stages"] = json::array();
    for (const auto& sr : res.stages) {
        json s;
        s["j"] = sr.j;
        s["method"] = sr.method;
        s["candidates_examined"] = sr.candidates_examined;
        s["effective_found"] = sr.effective_found;
        s["passed"] = sr.passed;
        out["stages"].push_back(std::move(s));
    }
    out["witnesses"] = json::array();
    for (const auto& sr : res.stages)
        for (const auto& w : sr.witnesses) {
            json cand;
            cand["j"] = w.j;
            for (const auto& [alpha, v] : w.b) cand["b"][subset_str(alpha)] = v;
            for (const auto& [key, v] : w.a)
                cand["a"][subset_str(key.first) + "<-" +
                          (key.second == 0 ? std::string("{}") : subset_str(key.second))] = v;
            out["witnesses"].push_back(std::move(cand));
        }
    if (!res.note.empty()) out["note"] = res.note;
    return out;
}

int cmd_reproduce(int n, std::uint64_t seed) {
    if (n < 2 || n > 4) throw CmdError(2, "args", "desk-scale bound: 2 <= n <= 4");
    const int m = n + 3;
    json transcript = json::array();

    // 1. Tower.
    for (int j = -1; j <= n - 2; ++j) {
        StageFan sf = build_stage(n, j);
        FanReport rep = validate_fan(sf.fan, seed);
        if (!rep.smooth || !rep.complete)
            throw CmdError(3, "tower", "stage fan not smooth and complete");
        json step;
        step["step"] = "tower";
        step["stage"] = j;
        step["rays"] = rep.ray_count;
        step["max_cones"] = rep.max_cone_count;
        transcript.push_back(std::move(step));
    }
    StageFan top = build_stage(n, n - 2);
    long expect_rays = (1L << (n + 1)) - 2;
    long expect_cones = 1;
    for (int k = 2; k <= n + 1; ++k) expect_cones *= k;
    if (static_cast<long>(top.fan.rays.size()) != expect_rays ||
        static_cast<long>(top.fan.max_cones.size()) != expect_cones)
        throw CmdError(3, "tower", "permutohedral ray/cone counts wrong");

    // 2. The reflection is an automorphism acting by label complement.
    auto refl = apply_lattice_map(top.fan, cremona_reflection(n));
    if (!refl.automorphism) throw CmdError(3, "reflection", "-I is not an automorphism");
    for (size_t r = 0; r < top.fan.rays.size(); ++r) {
        if (top.ray_labels[refl.ray_image[r]] != subset_complement(top.ray_labels[r], n))
            throw CmdError(3, "reflection", "ray map is not label complementation");
        if (refl.ray_image[refl.ray_image[r]] != static_cast<int>(r))
            throw CmdError(3, "reflection", "reflection is not an involution");
    }
    transcript.push_back({{"step", "reflection"}, {"automorphism", true}});

    // 3. Theorem closed form on beta = n h - e_1 - ... - e_{n+3}, checked
    // against the fan-derived pushforward.
    std::vector<mpz_class> a(m, 1);
    TransformedClass prime = cremona_transform_class(n, m, n, a);
    std::vector<mpz_class> expect_a(m, 0);
    expect_a[m - 2] = 1;
    expect_a[m - 1] = 1;
    if (prime.d != 1 || prime.a != expect_a)
        throw CmdError(3, "theorem", "image class is not h - e_{n+2} - e_{n+3}");
    ConsistencyReport cons = verify_consistency(n, m, 200, seed);
    if (!cons.ok) throw CmdError(3, "theorem", cons.failure);
    transcript.push_back({{"step", "theorem"},
                          {"image", format_curve(prime.d, prime.a)},
                          {"cross_checked_classes", cons.classes_checked}});

    // 4. Nonexceptionality certificate.
    Certificate cert = builtin_certificate(n, m, n, a);
    CertResult cr = certify_nonexceptional(n, m, n, a, cert, n);
    if (cr.status != CertStatus::Certified)
        throw CmdError(4, "certify", "nonexceptionality certification inconclusive");
    long total_effective = 0;
    for (const auto& sr : cr.stages) total_effective += sr.effective_found;
    transcript.push_back({{"step", "certify"},
                          {"status", "certified"},
                          {"certificate", cert.provenance},
                          {"effective_splittings", total_effective}});

    // 5+6. Trade points on both sides and evaluate.
    TradeResult t1 = trade_points(n, m, n, a, 0);
    TradeResult t2 = trade_points(n, m, prime.d, prime.a, 0);
    if (!t1.tradeable || !t2.tradeable) throw CmdError(3, "trade", "class not tradeable");
    mpz_class v1 = gw_pn(t1.query);
    mpz_class v2 = gw_pn(t2.query);
    transcript.push_back({{"step", "evaluate"},
                          {"lhs", zstr(v1)},
                          {"rhs", zstr(v2)},
                          {"lhs_points", t1.traded},
                          {"rhs_points", t2.traded}});
    if (v1 != 1 || v2 != 1) throw CmdError(3, "evaluate", "invariants are not both 1");

    json out;
    out["n"] = n;
    out["class"] = format_curve(n, a);
    out["image"] = format_curve(prime.d, prime.a);
    out["value"] = zstr(v1);
    out["transcript"] = std::move(transcript);
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cremona symmetry of genus-0 Gromov-Witten invariants on permutohedral blowups"};
    app.require_subcommand(1);
    std::uint64_t seed = 20140925;
    app.add_option("--seed", seed, "seed for sampled completeness checks");

    // fan build/verify
    auto* fan = app.add_subcommand("fan", "lattice fans of the blowup tower");
    fan->require_subcommand(1);
    int fb_n = 0, fb_stage = 0;
    std::string fb_out;
    auto* fan_build = fan->add_subcommand("build", "build a tower stage fan");
    fan_build->add_option("--n", fb_n)->required();
    fan_build->add_option("--stage", fb_stage)->required();
    fan_build->add_option("--out", fb_out);
    int fv_n = -1, fv_stage = 0;
    std::string fv_in;
    auto* fan_verify = fan->add_subcommand("verify", "validate a fan");
    fan_verify->add_option("--n", fv_n);
    fan_verify->add_option("--stage", fv_stage);
    fan_verify->add_option("--in", fv_in, "fan JSON file");

    // ring pair/mori
    auto* ring = app.add_subcommand("ring", "intersection pairing and Mori cone");
    ring->require_subcommand(1);
    int rp_n = 0, rp_stage = -100;
    std::string rp_div, rp_curve;
    auto* ring_pair = ring->add_subcommand("pair", "pair a divisor with a curve class");
    ring_pair->add_option("--n", rp_n)->required();
    ring_pair->add_option("--stage", rp_stage);
    ring_pair->add_option("--divisor", rp_div)->required();
    ring_pair->add_option("--curve", rp_curve)->required();
    int rm_n = 0, rm_stage = -100;
    std::string rm_class;
    auto* ring_mori = ring->add_subcommand("mori", "effective-cone membership");
    ring_mori->add_option("--n", rm_n)->required();
    ring_mori->add_option("--stage", rm_stage);
    ring_mori->add_option("--class", rm_class)->required();

    // cremona push/verify
    auto* crem = app.add_subcommand("cremona", "the Cremona involution on classes");
    crem->require_subcommand(1);
    int cp_n = 0, cp_m = 0;
    std::string cp_class;
    auto* crem_push = crem->add_subcommand("push", "push a curve class forward");
    crem_push->add_option("--n", cp_n)->required();
    crem_push->add_option("--m", cp_m);
    crem_push->add_option("--class", cp_class)->required();
    int cv_n = 0, cv_m = 0;
    long cv_samples = 1000;
    auto* crem_verify = crem->add_subcommand("verify", "cross-check the two derivations");
    crem_verify->add_option("--n", cv_n)->required();
    crem_verify->add_option("--m", cv_m);
    crem_verify->add_option("--samples", cv_samples);

    // gw stationary/invariant
    auto* gw = app.add_subcommand("gw", "genus-0 invariants of P^n");
    gw->require_subcommand(1);
    int gs_n = 0;
    long gs_d = 0;
    auto* gw_stat = gw->add_subcommand("stationary", "count through the maximal number of points");
    gw_stat->add_option("--n", gs_n)->required();
    gw_stat->add_option("--d", gs_d)->required();
    int gi_n = 0;
    long gi_d = 0;
    std::string gi_ins;
    auto* gw_inv = gw->add_subcommand("invariant", "invariant with given insertion exponents");
    gw_inv->add_option("--n", gi_n)->required();
    gw_inv->add_option("--d", gi_d)->required();
    gw_inv->add_option("--insertions", gi_ins)->required();

    // symmetry check
    auto* sym = app.add_subcommand("symmetry", "Cremona symmetry of invariants");
    sym->require_subcommand(1);
    int sc_n = 0, sc_m = 0;
    long sc_r = 0;
    std::string sc_class;
    auto* sym_check = sym->add_subcommand("check", "evaluate both sides when computable");
    sym_check->add_option("--n", sc_n)->required();
    sym_check->add_option("--m", sc_m);
    sym_check->add_option("--class", sc_class)->required();
    sym_check->add_option("--points", sc_r);

    // nonexceptional certify
    auto* nonexc = app.add_subcommand("nonexceptional", "degeneration-splitting certification");
    nonexc->require_subcommand(1);
    int nc_n = 0, nc_m = 0;
    long nc_bound = -1;
    std::string nc_class, nc_cert = "auto";
    auto* nonexc_cert = nonexc->add_subcommand("certify", "certify a class nonexceptional");
    nonexc_cert->add_option("--n", nc_n)->required();
    nonexc_cert->add_option("--m", nc_m);
    nonexc_cert->add_option("--class", nc_class)->required();
    nonexc_cert->add_option("--bound", nc_bound);
    nonexc_cert->add_option("--certificate", nc_cert)->check(CLI::IsMember({"auto", "extremal", "mori", "none"}));

    // reproduce corollary
    auto* repro = app.add_subcommand("reproduce", "end-to-end reproductions");
    repro->require_subcommand(1);
    int rc_n = 0;
    auto* repro_cor = repro->add_subcommand("corollary", "rational normal curve uniqueness");
    repro_cor->add_option("--n", rc_n)->required();

    // table
    int tb_n = 0;
    long tb_dmax = 0;
    auto* table = app.add_subcommand("table", "stationary invariants up to a degree");
    table->add_option("--n", tb_n)->required();
    table->add_option("--d-max", tb_dmax)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        json err;
        err["error"]["step"] = "args";
        err["error"]["detail"] = e.what();
        std::cout << err.dump() << std::endl;
        return 2;
    }

    try {
        if (*fan_build) {
            StageFan sf = build_stage(fb_n, fb_stage);
            json j = fan_json(sf);
            if (!fb_out.empty()) {
                std::ofstream f(fb_out);
                if (!f) throw CmdError(2, "io", "cannot open output file");
                f << j.dump() << "\n";
                json note;
                note["written"] = fb_out;
                note["rays"] = sf.fan.rays.size();
                note["max_cones"] = sf.fan.max_cones.size();
                emit(note);
            } else {
                emit(j);
            }
            return 0;
        }
        if (*fan_verify) {
            StageFan sf;
            if (!fv_in.empty()) {
                std::ifstream f(fv_in);
                if (!f) throw CmdError(2, "io", "cannot open input file");
                json j = json::parse(f);
                sf = fan_from_json(j);
            } else if (fv_n >= 2) {
                sf = build_stage(fv_n, fv_stage);
            } else {
                throw CmdError(2, "args", "need --in FILE or --n/--stage");
            }
            FanReport rep = validate_fan(sf.fan, seed);
            json out;
            out["smooth"] = rep.smooth;
            out["complete"] = rep.complete;
            out["ray_count"] = rep.ray_count;
            out["max_cone_count"] = rep.max_cone_count;
            emit(out);
            return 0;
        }
        if (*ring_pair) {
            ClassExpr dex = parse_class_expr(rp_div, rp_n);
            ClassExpr cex = parse_class_expr(rp_curve, rp_n);
            if (!dex.divisor_side || cex.divisor_side)
                throw CmdError(2, "class", "--divisor wants H/E tokens, --curve wants h/e tokens");
            int stage = rp_stage == -100 ? rp_n - 2 : rp_stage;
            int extras = std::max(0, std::max(dex.max_point(), cex.max_point()) - (rp_n + 1));
            auto ringp = get_ring(rp_n, stage, extras);
            ZVec dv = expr_to_coords(dex, ringp->basis());
            ZVec cv = expr_to_coords(cex, ringp->basis());
            json out;
            out["value"] = zstr(ringp->pair(dv, cv));
            emit(out);
            return 0;
        }
        if (*ring_mori) {
            ClassExpr cex = parse_class_expr(rm_class, rm_n);
            if (cex.divisor_side) throw CmdError(2, "class", "expected a curve class");
            if (!cex.coeff_extra.empty())
                throw CmdError(2, "class", "Mori membership is defined for toric classes only");
            int stage = rm_stage == -100 ? rm_n - 2 : rm_stage;
            auto ringp = get_ring(rm_n, stage, 0);
            ZVec cv = expr_to_coords(cex, ringp->basis());
            json out;
            out["membership"] = membership_str(ringp->mori_membership(cv));
            emit(out);
            return 0;
        }
        if (*crem_push) {
            PointClass pc = point_class_from_expr(cp_class, cp_n, cp_m);
            TransformedClass img = cremona_transform_class(cp_n, pc.m, pc.d, pc.a);
            // matrix route must agree
            CremonaMap cm = build_cremona(cp_n, pc.m);
            ZVec beta = curve_from_point_data(cm.basis, pc.d, pc.a);
            ZVec image = apply_matrix(cm.curve_pushforward, beta);
            if (image != curve_from_point_data(cm.basis, img.d, img.a))
                throw CmdError(3, "push", "closed form and matrix pushforward disagree");
            ZVec back = apply_matrix(cm.curve_pushforward, image);
            mpz_class degree = (cp_n + 1) * pc.d;
            for (const auto& ai : pc.a) degree -= (cp_n - 1) * ai;
            json out;
            out["image"]["d"] = zstr(img.d);
            out["image"]["a"] = zvec(img.a);
            out["image"]["class"] = format_curve(img.d, img.a);
            out["anticanonical_degree"] = zstr(degree);
            out["involution_ok"] = (back == beta);
            emit(out);
            return 0;
        }
        if (*crem_verify) {
            int m = cv_m > 0 ? cv_m : cv_n + 3;
            ConsistencyReport rep = verify_consistency(cv_n, m, cv_samples, seed);
            json out;
            out["ok"] = rep.ok;
            out["classes_checked"] = rep.classes_checked;
            if (!rep.ok) out["failure"] = rep.failure;
            emit(out);
            return rep.ok ? 0 : 3;
        }
        if (*gw_stat) {
            auto s = stationary(gs_n, gs_d);
            json out;
            if (!s) {
                out["no_integral_r"] = true;
            } else {
                out["r"] = s->r;
                out["N"] = zstr(s->value);
            }
            emit(out);
            return 0;
        }
        if (*gw_inv) {
            GWQuery q;
            q.n = gi_n;
            q.d = gi_d;
            std::stringstream ss(gi_ins);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                if (tok.empty()) continue;
                q.insertions.push_back(std::stoi(tok));
            }
            json out;
            out["value"] = zstr(gw_pn(q));
            emit(out);
            return 0;
        }
        if (*sym_check) {
            PointClass pc = point_class_from_expr(sc_class, sc_n, sc_m);
            SymmetryReport rep = symmetry_check(sc_n, pc.m, pc.d, pc.a, sc_r);
            json out;
            out["beta"]["class"] = format_curve(rep.beta.d, rep.beta.a);
            out["beta_prime"]["class"] = format_curve(rep.beta_prime.d, rep.beta_prime.a);
            out["fixed_class"] = rep.fixed_class;
            auto side = [&](const SymmetrySide& s) {
                json sj;
                sj["computable"] = s.computable;
                if (s.computable) sj["value"] = zstr(s.value);
                else sj["reason"] = s.reason;
                return sj;
            };
            out["beta"]["evaluation"] = side(rep.beta);
            out["beta_prime"]["evaluation"] = side(rep.beta_prime);
            if (rep.equal.has_value()) out["equal"] = *rep.equal;
            out["beta"]["certificate"] = rep.beta_certificate;
            out["beta_prime"]["certificate"] = rep.beta_prime_certificate;
            emit(out);
            return 0;
        }
        if (*nonexc_cert) {
            PointClass pc = point_class_from_expr(nc_class, nc_n, nc_m);
            Certificate cert;
            if (nc_cert == "auto") cert = builtin_certificate(nc_n, pc.m, pc.d, pc.a);
            else if (nc_cert == "extremal")
                cert = Certificate{CertKind::DeclaredExtremal, "declared extremal by the caller"};
            else if (nc_cert == "mori") {
                cert = builtin_certificate(nc_n, pc.m, pc.d, pc.a);
                if (cert.kind != CertKind::MoriVerified)
                    cert = Certificate{CertKind::None, "Mori boundary verification failed"};
            } else {
                cert = Certificate{CertKind::None, "no certificate requested"};
            }
            long bound = nc_bound >= 0 ? nc_bound : std::max<long>(1, mpz_get_si(pc.d.get_mpz_t()));
            CertResult res = certify_nonexceptional(nc_n, pc.m, pc.d, pc.a, cert, bound);
            json out = cert_json(res);
            out["certificate"] = cert.provenance;
            emit(out);
            return res.status == CertStatus::Certified ? 0 : 4;
        }
        if (*repro_cor) return cmd_reproduce(rc_n, seed);
        if (*table) {
            if (tb_n < 2) throw CmdError(2, "args", "need n >= 2");
            json rows = json::array();
            for (long d = 1; d <= tb_dmax; ++d) {
                auto s = stationary(tb_n, d);
                if (!s) continue;
                rows.push_back({{"d", d}, {"r", s->r}, {"N", zstr(s->value)}});
            }
            json out;
            out["n"] = tb_n;
            out["rows"] = std::move(rows);
            emit(out);
            return 0;
        }
        return fail_with(2, "args", "no subcommand");
    } catch (const CmdError& e) {
        return fail_with(e.code, e.step, e.what());
    } catch (const ParseError& e) {
        return fail_with(2, "class", e.what());
    } catch (const std::invalid_argument& e) {
        return fail_with(2, "args", e.what());
    } catch (const std::exception& e) {
        return fail_with(3, "internal", e.what());
    }
}
