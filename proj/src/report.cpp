#include "aiet/report.hpp"

#include <cmath>

namespace aiet {

namespace {

Json config_json(const ReportConfig& cfg) {
    Json j;
    j["horizon"] = cfg.dynamics.horizon;
    j["max_period"] = cfg.dynamics.max_period;
    j["guard_pieces"] = cfg.dynamics.guard;
    j["rho_tol"] = cfg.rho_tol;
    j["bosh_tol"] = cfg.bosh_tol;
    j["drift_n"] = cfg.drift_n;
    return j;
}

Json make_report(const std::string& command, Json inputs, Json results, const ReportConfig& cfg) {
    Json j;
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    j["config"] = config_json(cfg);
    j["schema_version"] = kSchemaVersion;
    return j;
}

Json scalar_pairs_json(const std::vector<std::pair<Scalar, Scalar>>& pairs) {
    Json a = Json::array();
    for (const auto& [x, v] : pairs) a.push_back(Json::array({scalar_json(x), scalar_json(v)}));
    return a;
}

Json scalars_json(const std::vector<Scalar>& xs) {
    Json a = Json::array();
    for (const Scalar& x : xs) a.push_back(scalar_json(x));
    return a;
}

Json intervals_json(const std::vector<Interval>& is) {
    Json a = Json::array();
    for (const Interval& i : is) a.push_back(interval_json(i));
    return a;
}

bool is_rational_map(const Aiet& f) {
    for (const Piece& p : f.pieces())
        if (!p.left.is_rational() || !p.slope.is_rational() || !p.intercept.is_rational())
            return false;
    return true;
}

Json periodic_json(const PeriodicStructure& ps) {
    Json j;
    j["conclusive"] = ps.conclusive;
    j["period"] = ps.period;
    j["fixed_intervals"] = intervals_json(ps.fixed_intervals);
    j["isolated_points"] = scalars_json(ps.isolated_points);
    Json sh = Json::array();
    for (const SemiHyperbolicPoint& p : ps.semi_hyperbolic) {
        Json e;
        e["point"] = scalar_json(p.point);
        e["period"] = p.period;
        e["side"] = p.side == Side::Left ? "left" : "right";
        e["derivative"] = scalar_json(p.derivative);
        sh.push_back(std::move(e));
    }
    j["semi_hyperbolic"] = std::move(sh);
    j["note"] = ps.note;
    return j;
}

Json growth_json(const GrowthClass& g) {
    Json j;
    switch (g.kind) {
        case GrowthClass::Bounded: j["kind"] = "bounded"; break;
        case GrowthClass::Linear: j["kind"] = "linear"; break;
        default: j["kind"] = "inconclusive"; break;
    }
    j["bound"] = g.bound;
    if (g.witness) {
        j["witness_point"] = scalar_json(g.witness->initial);
        j["witness_offset"] = g.witness->length;
    }
    j["note"] = g.note;
    return j;
}

Json shape_json(const Shape& s) {
    Json j;
    j["kind"] = shape_kind_name(s.kind);
    if (s.support) j["support"] = interval_json(*s.support);
    if (s.delta) j["delta"] = scalar_json(*s.delta);
    return j;
}

/// Two-slope data (lambda1, lambda2, rho) of the unit chart of a
/// non-rotation component, when it has exactly two slopes.
Json component_json(const ThComponent& c) {
    Json j;
    j["support"] = interval_json(c.support);
    j["map"] = aiet_json(c.map);
    j["is_rotation"] = c.is_rotation;
    if (c.is_rotation) {
        j["delta"] = scalar_json(c.delta);
        j["angle"] = scalar_json(c.angle);
    } else {
        Aiet unit = restrict_to_unit(c.map, c.support);
        std::vector<Scalar> slopes = unit.slopes();
        if (slopes.size() == 2) {
            double l1 = slopes[1].to_double();  // expanding slope
            double l2 = slopes[0].to_double();
            j["lambda1"] = scalar_json(slopes[1]);
            j["lambda2"] = scalar_json(slopes[0]);
            j["rho"] = std::log(l1) / (std::log(l1) - std::log(l2));
        }
        if (c.drift) j["drift_certificate"] = certificate_json(*c.drift);
    }
    return j;
}

Json normal_form_json(const ThNormalForm& nf) {
    Json j;
    j["status"] = "ok";
    j["power"] = nf.power;
    j["conjugator"] = aiet_json(nf.conjugator);
    j["fixed_prefix"] = scalar_json(nf.fixed_prefix);
    j["all_rotations"] = nf.all_rotations;
    Json comps = Json::array();
    for (const ThComponent& c : nf.components) comps.push_back(component_json(c));
    j["components"] = std::move(comps);
    return j;
}

}  // namespace

Json scalar_json(const Scalar& s) { return s.str(); }

Json interval_json(const Interval& i) {
    Json j;
    j["left"] = scalar_json(i.left);
    j["right"] = scalar_json(i.right);
    return j;
}

Json aiet_json(const Aiet& f) {
    Json pieces = Json::array();
    for (const Piece& p : f.pieces())
        pieces.push_back(Json::array(
            {scalar_json(p.left), scalar_json(p.slope), scalar_json(p.intercept)}));
    Json j;
    j["pieces"] = std::move(pieces);
    return j;
}

Json certificate_json(const Certificate& c) {
    Json j;
    j["kind"] = certificate_kind_name(c.kind);
    j["coefficient"] = c.coefficient;
    j["offset"] = c.offset;
    j["exact"] = c.exact;
    if (c.empirical_params) {
        Json e;
        e["probe_n"] = c.empirical_params->probe_n;
        e["estimate"] = c.empirical_params->estimate;
        j["empirical_params"] = std::move(e);
    } else {
        j["empirical_params"] = nullptr;
    }
    j["witness"] = c.witness;
    if (c.kind == Certificate::Kind::FiniteOrder) j["order"] = c.order;
    return j;
}

CmdResult cmd_analyze(const MapFile& file, const std::string& map_name, const ReportConfig& cfg) {
    const Aiet& f = file.map(map_name);
    Json inputs;
    inputs["map"] = map_name;

    Json res;
    res["map"] = aiet_json(f);
    BreakData bd = f.breakpoints();
    Json breaks;
    breaks["bp0"] = scalars_json(bd.bp0);
    breaks["bp1"] = scalars_json(bd.bp1);
    breaks["delta"] = scalar_pairs_json(bd.delta);
    breaks["sigma"] = scalar_pairs_json(bd.sigma);
    res["breakpoints"] = std::move(breaks);
    res["slopes"] = scalars_json(f.slopes());
    res["shape"] = shape_json(f.classify_shape());
    res["is_circle_homeo"] = f.is_circle_homeo();

    int exit_code = 0;
    try {
        res["periodic"] = periodic_json(periodic_structure(f, cfg.dynamics));
        res["growth"] = growth_json(classify_bp_growth(f, cfg.dynamics));
    } catch (const HorizonExceeded& e) {
        res["periodic"] = Json{{"conclusive", false}, {"note", e.what()}};
        res["growth"] = Json{{"kind", "inconclusive"}, {"note", e.what()}};
        exit_code = 2;
    }
    return {make_report("analyze", std::move(inputs), std::move(res), cfg), exit_code};
}

CmdResult cmd_normalize(const MapFile& file, const std::string& map_name,
                        const ReportConfig& cfg) {
    const Aiet& f = file.map(map_name);
    Json inputs;
    inputs["map"] = map_name;

    Json res;
    int exit_code = 0;
    try {
        res = normal_form_json(normal_form_theorem_th(f, cfg.dynamics, cfg.drift_n));
    } catch (const HorizonExceeded& e) {
        res["status"] = "inconclusive";
        res["note"] = e.what();
        exit_code = 2;
    }
    return {make_report("normalize", std::move(inputs), std::move(res), cfg), exit_code};
}

CmdResult cmd_certify(const MapFile& file, const std::string& map_name,
                      const std::optional<std::string>& group_name, const ReportConfig& cfg) {
    const Aiet& f = file.map(map_name);
    Json inputs;
    inputs["map"] = map_name;
    if (group_name) inputs["group"] = *group_name;

    GeneratingSet gens =
        group_name ? file.group(*group_name) : GeneratingSet{{f}};

    Json res;
    int exit_code = 0;
    if (is_rational_map(f)) {
        ClassifyResult cr = classify_rational(f, cfg.dynamics, cfg.drift_n);
        switch (cr.verdict) {
            case ClassifyResult::Verdict::FiniteOrder:
                res["verdict"] = "finite_order";
                res["order"] = cr.order;
                break;
            case ClassifyResult::Verdict::Undistorted:
                res["verdict"] = "undistorted";
                break;
            default:
                res["verdict"] = "inconclusive";
                exit_code = 2;
                break;
        }
        if (cr.certificate) res["certificate"] = certificate_json(*cr.certificate);
        res["note"] = cr.note;
        // Certificates above are stated for gens = {f}; rescale the word-length
        // coefficient against the requested generating set where one was given.
        if (group_name && cr.verdict == ClassifyResult::Verdict::Undistorted) {
            std::optional<Certificate> c = semi_hyperbolic_certificate(f, gens, cfg.dynamics);
            if (!c) c = bp_growth_certificate(f, gens, cfg.dynamics);
            if (c) res["group_certificate"] = certificate_json(*c);
        }
    } else {
        // Irrational data: run the certificate cascade directly.
        std::optional<Certificate> cert = semi_hyperbolic_certificate(f, gens, cfg.dynamics);
        std::string note = "semi_hyperbolic";
        if (!cert) {
            cert = bp_growth_certificate(f, gens, cfg.dynamics);
            note += "; bp_growth";
        }
        if (!cert) {
            try {
                ThNormalForm nf = normal_form_theorem_th(f, cfg.dynamics, cfg.drift_n);
                note += "; normal_form";
                for (const ThComponent& c : nf.components)
                    if (!c.is_rotation && c.drift) {
                        cert = c.drift;
                        break;
                    }
                if (!cert && nf.all_rotations) {
                    for (const ThComponent& c : nf.components)
                        if (!c.angle.is_rational()) {
                            Certificate nc;
                            nc.kind = Certificate::Kind::NormalFormRotations;
                            nc.coefficient = 1.0 / static_cast<double>(nf.power);
                            nc.offset = 0;
                            nc.exact = true;
                            nc.witness = "irrational rotation angle " + c.angle.str() +
                                         " on [" + c.support.left.str() + ", " +
                                         c.support.right.str() + ")";
                            cert = nc;
                            break;
                        }
                }
            } catch (const HorizonExceeded& e) {
                note += std::string("; normal_form horizon: ") + e.what();
            } catch (const ValidationError& e) {
                note += std::string("; normal_form: ") + e.what();
            }
        }
        if (cert) {
            res["verdict"] = "undistorted";
            res["certificate"] = certificate_json(*cert);
        } else {
            res["verdict"] = "inconclusive";
            exit_code = 2;
        }
        res["note"] = note;
    }
    return {make_report("certify", std::move(inputs), std::move(res), cfg), exit_code};
}

CmdResult cmd_group_bs_check(const MapFile& file, const std::string& a, const std::string& b,
                             long m, long n, const ReportConfig& cfg) {
    Json inputs;
    inputs["a"] = a;
    inputs["b"] = b;
    inputs["m"] = m;
    inputs["n"] = n;
    Json res;
    res["relation_holds"] =
        bs_relation_check(file.map(a), file.map(b), m, n, cfg.dynamics.guard);
    return {make_report("group bs-check", std::move(inputs), std::move(res), cfg), 0};
}

CmdResult cmd_group_bs_obstruct(const MapFile& file, const std::string& a, const std::string& b,
                                long m, long n, long s_max, const ReportConfig& cfg) {
    Json inputs;
    inputs["a"] = a;
    inputs["b"] = b;
    inputs["m"] = m;
    inputs["n"] = n;
    inputs["s_max"] = s_max;
    BsObstruction ob =
        bs_obstruction(file.map(a), file.map(b), m, n, s_max, cfg.dynamics.guard);
    Json res;
    res["relation_holds"] = ob.relation_holds;
    res["decomposed"] = ob.decomposed;
    if (ob.s) res["s"] = *ob.s; else res["s"] = nullptr;
    res["contradiction"] = ob.contradiction;
    res["details"] = ob.details;
    res["note"] = ob.note;
    int exit_code = (ob.relation_holds && !ob.contradiction) ? 2 : 0;
    return {make_report("group bs-obstruct", std::move(inputs), std::move(res), cfg), exit_code};
}

CmdResult cmd_group_nilp_check(const MapFile& file, const std::string& u, const std::string& v,
                               long p, long q, const ReportConfig& cfg) {
    Json inputs;
    inputs["u"] = u;
    inputs["v"] = v;
    inputs["p"] = p;
    inputs["q"] = q;
    NilpotentReport r =
        nilpotent_commutator_check(file.map(u), file.map(v), p, q, cfg.dynamics.guard);
    Json res;
    res["central"] = r.central;
    res["commutator"] = aiet_json(r.c);
    res["identity_holds"] = r.identity_holds;
    Json wit = Json::array();
    for (const auto& [n, ok] : r.distortion_witness)
        wit.push_back(Json{{"n", n}, {"holds", ok}});
    res["distortion_witness"] = std::move(wit);
    res["note"] = r.note;
    return {make_report("group nilp-check", std::move(inputs), std::move(res), cfg), 0};
}

CmdResult cmd_group_word(const MapFile& file, const std::string& group_name,
                         const std::vector<int>& word, const ReportConfig& cfg) {
    Json inputs;
    inputs["group"] = group_name;
    inputs["word"] = word;
    GeneratingSet gens = file.group(group_name);
    Aiet g = word_evaluate(gens, word, cfg.dynamics.guard);
    Json res;
    res["map"] = aiet_json(g);
    res["is_identity"] = g.is_identity();
    res["shape"] = shape_json(g.classify_shape());
    return {make_report("group word", std::move(inputs), std::move(res), cfg), 0};
}

CmdResult cmd_group_ball(const MapFile& file, const std::string& group_name, long radius,
                         const std::vector<std::string>& targets, const ReportConfig& cfg) {
    Json inputs;
    inputs["group"] = group_name;
    inputs["radius"] = radius;
    inputs["targets"] = targets;
    GeneratingSet gens = file.group(group_name);
    std::vector<Aiet> maps;
    for (const std::string& t : targets) maps.push_back(file.map(t));
    std::vector<std::optional<long>> lens =
        ball_word_lengths(gens, radius, maps, cfg.dynamics.guard);
    Json res;
    Json lengths = Json::array();
    for (size_t i = 0; i < targets.size(); ++i) {
        Json e;
        e["target"] = targets[i];
        if (lens[i]) e["word_length"] = *lens[i]; else e["word_length"] = nullptr;
        lengths.push_back(std::move(e));
    }
    res["word_lengths"] = std::move(lengths);
    return {make_report("group ball", std::move(inputs), std::move(res), cfg), 0};
}

}  // namespace aiet
