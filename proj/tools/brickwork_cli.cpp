#include "brickwork/io.hpp"
#include "brickwork/pipeline.hpp"
#include "brickwork/svg.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace brickwork;

namespace {

// a command finished but the answer is negative (exit 3, document already printed)
struct NegativeResult {};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ValidationError("cannot write " + out);
    f << text;
}

// "1/20(1,3,4)" or a group document
GroupType group_arg(const std::string& s) {
    if (s.find('(') != std::string::npos) return GroupType::parse(s);
    return parse_group(slurp(s));
}

Vec3 triple_arg(const std::string& s) {
    Vec3 v{};
    std::stringstream ss(s);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 3) throw ValidationError("expected three comma separated integers, got \"" + s + "\"");
        try {
            std::size_t used = 0;
            v[i] = std::stoll(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::logic_error&) {
            throw ValidationError("not an integer: \"" + part + "\"");
        }
        ++i;
    }
    if (i != 3) throw ValidationError("expected three comma separated integers, got \"" + s + "\"");
    return v;
}

Fan fan_for(const GroupType& G, const std::string& path) {
    Fan f = parse_fan(slurp(path));
    if (!(f.group == G)) throw ValidationError("fan is for " + f.group.to_string() + ", not " + G.to_string());
    return f;
}

// k=kind[:n1,n2,n3] with kind auto, trivial, ghilb, recurse; or k=load:file
std::pair<int, Strategy> strategy_arg(const std::string& s) {
    auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError("strategy must look like k=kind, got \"" + s + "\"");
    int k = 0;
    try {
        k = std::stoi(s.substr(0, eq));
    } catch (const std::logic_error&) {
        throw ValidationError("bad chart index in \"" + s + "\"");
    }
    if (k < 1 || k > 3) throw ValidationError("chart index must be 1, 2 or 3");
    std::string rest = s.substr(eq + 1), arg;
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
        arg = rest.substr(colon + 1);
        rest = rest.substr(0, colon);
    }
    Strategy st;
    if (rest == "auto") st = Strategy::automatic();
    else if (rest == "trivial") st = Strategy::trivial();
    else if (rest == "ghilb") st = Strategy::ghilb();
    else if (rest == "recurse") st = Strategy::recurse();
    else if (rest == "load") st = Strategy::load(parse_brickset(slurp(arg)));
    else throw ValidationError("unknown strategy \"" + rest + "\"");
    if (rest == "recurse" && !arg.empty()) st.center = LatticePoint{triple_arg(arg), 0};
    return {k - 1, st};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"brickwork: G-bricks, bricksets and stability certificates for cyclic quotient 3-folds"};
    app.require_subcommand(1);
    std::string out;

    auto* group = app.add_subcommand("group", "group commands");
    group->require_subcommand(1);
    auto* group_info = group->add_subcommand("info", "order, weight map, junior points and families");
    std::string type;
    group_info->add_option("type", type, "group type, e.g. 1/20(1,3,4), or a group document")->required();

    auto* subdivide = app.add_subcommand("subdivide", "star subdivision of the positive octant");
    std::string at;
    subdivide->add_option("type", type)->required();
    subdivide->add_option("--at", at, "numerators n1,n2,n3 of the center over r")->required();
    subdivide->add_option("-o,--output", out);

    auto* fan_cmd = app.add_subcommand("fan", "fan commands");
    fan_cmd->require_subcommand(1);
    auto* fan_check = fan_cmd->add_subcommand("check", "simplicial, terminal and nef report");
    std::string fan_path;
    fan_check->add_option("fan", fan_path)->required();
    fan_check->add_option("-o,--output", out);

    auto* hilb = app.add_subcommand("hilb", "G-Hilb fan and brickset");
    std::string fan_out, bs_out;
    hilb->add_option("type", type)->required();
    hilb->add_option("--fan-out", fan_out, "write the fan document here");
    hilb->add_option("--brickset-out", bs_out, "write the brickset document here");
    hilb->add_option("-o,--output", out);

    auto* bs = app.add_subcommand("brickset", "brickset commands");
    bs->require_subcommand(1);
    auto* bs_build = bs->add_subcommand("build", "brickset through a star subdivision");
    std::string center;
    std::vector<std::string> strategies;
    bs_build->add_option("type", type)->required();
    bs_build->add_option("fan", fan_path)->required();
    bs_build->add_option("--center", center, "numerators n1,n2,n3")->required();
    bs_build->add_option("--strategy", strategies, "k=auto|trivial|ghilb|recurse[:n1,n2,n3]|load:file");
    bs_build->add_option("-o,--output", out);
    auto* bs_verify = bs->add_subcommand("verify", "re-check every entry and the tiling");
    std::string bs_path;
    bs_verify->add_option("brickset", bs_path)->required();
    bs_verify->add_option("-o,--output", out);

    auto* theta = app.add_subcommand("theta", "stability parameter commands");
    theta->require_subcommand(1);
    auto* theta_solve = theta->add_subcommand("solve", "parameter with prescribed chart pushforwards");
    std::vector<std::string> targets;
    theta_solve->add_option("type", type)->required();
    theta_solve->add_option("--center", center, "numerators n1,n2,n3")->required();
    theta_solve->add_option("--target", targets, "k=q0,q1,... (rationals); missing charts get 0");
    theta_solve->add_option("-o,--output", out);

    auto* stab = app.add_subcommand("stability", "stability commands");
    stab->require_subcommand(1);
    auto* stab_check = stab->add_subcommand("check", "minimal margin over closed subsets");
    std::string brick_path, theta_path, vartheta_path;
    bool symbolic = false;
    stab_check->add_option("brick", brick_path)->required();
    stab_check->add_option("theta", theta_path)->required();
    stab_check->add_flag("--symbolic-m", symbolic, "margin of theta + m*vartheta for large m");
    stab_check->add_option("--vartheta", vartheta_path, "vartheta document for --symbolic-m");
    stab_check->add_option("-o,--output", out);

    auto* certify = app.add_subcommand("certify", "stability certificate for a model fan");
    Int m_max = Int{1} << 20;
    certify->add_option("type", type)->required();
    certify->add_option("fan", fan_path)->required();
    certify->add_option("--vartheta", vartheta_path, "theta document used instead of the catalog");
    certify->add_option("--center", center, "fixed subdivision center n1,n2,n3");
    certify->add_option("--m-max", m_max, "search bound for m");
    certify->add_option("-o,--output", out);

    auto* render = app.add_subcommand("render", "SVG picture of a fan");
    render->add_option("fan", fan_path)->required();
    render->add_option("-o,--output", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cout << error_document("usage", "usage", e.what());
        return 2;
    }

    try {
        if (group_info->parsed()) {
            emit(group_info_report(group_arg(type)), out);
        } else if (subdivide->parsed()) {
            GroupType G = group_arg(type);
            emit(subdivision_report(G, G.point(triple_arg(at))), out);
        } else if (fan_check->parsed()) {
            Fan f = parse_fan(slurp(fan_path));
            emit(model_report(f.group, f, certify_model(f.group, f)), out);
        } else if (hilb->parsed()) {
            GroupType G = group_arg(type);
            Brickset B = ghilb(G);
            if (!fan_out.empty()) emit(serialize(B.fan()), fan_out);
            if (!bs_out.empty()) emit(serialize(B), bs_out);
            emit(hilb_report(B), out);
        } else if (bs_build->parsed()) {
            GroupType G = group_arg(type);
            Fan f = fan_for(G, fan_path);
            std::vector<Strategy> st(3);
            for (auto& s : strategies) {
                auto [k, v] = strategy_arg(s);
                st[k] = v;
            }
            LatticePoint v = G.point(triple_arg(center));
            auto ctxs = chart_contexts(G, v);
            for (int k = 0; k < 3; ++k)
                if (st[k].center) st[k].center->den = ctxs[k].a_k();
            emit(serialize(build_brickset(G, f, v, st)), out);
        } else if (bs_verify->parsed()) {
            auto rep = verify_brickset(parse_brickset(slurp(bs_path)));
            emit(brickset_report(rep), out);
            if (!rep.ok) throw NegativeResult{};
        } else if (theta_solve->parsed()) {
            GroupType G = group_arg(type);
            auto ctxs = chart_contexts(G, G.point(triple_arg(center)));
            std::vector<std::optional<Theta>> tg(3);
            for (auto& s : targets) {
                auto eq = s.find('=');
                if (eq == std::string::npos) throw ValidationError("target must look like k=q0,q1,...");
                int k = std::stoi(s.substr(0, eq)) - 1;
                if (k < 0 || k > 2) throw ValidationError("chart index must be 1, 2 or 3");
                std::vector<Rational> vals;
                std::stringstream ss(s.substr(eq + 1));
                std::string part;
                while (std::getline(ss, part, ',')) vals.push_back(parse_rational(part));
                tg[k] = Theta::make(vals);
            }
            auto res = solve_partial(G, ctxs, tg);
            emit(solve_report(res), out);
            if (!res.feasible || !res.surjective) throw NegativeResult{};
        } else if (stab_check->parsed()) {
            auto doc = parse_brick(slurp(brick_path));
            Theta th = parse_theta(slurp(theta_path));
            StabilityMargin mg;
            if (symbolic) {
                if (vartheta_path.empty()) throw ValidationError("--symbolic-m needs --vartheta");
                mg = min_margin_symbolic(doc.brick, th, parse_theta(slurp(vartheta_path)));
            } else {
                mg = min_margin(doc.brick, th);
            }
            emit(margin_report(mg, doc.brick), out);
            if (!mg.stable()) throw NegativeResult{};
        } else if (certify->parsed()) {
            GroupType G = group_arg(type);
            Fan f = fan_for(G, fan_path);
            EndToEndOptions opt;
            opt.m_max = m_max;
            if (!vartheta_path.empty()) opt.vartheta = vartheta_custom(G, parse_theta(slurp(vartheta_path)).values());
            auto res = center.empty() ? end_to_end(G, f, opt) : end_to_end_at(G, f, G.point(triple_arg(center)), opt);
            if (!res.ok()) {
                emit(failure_report(res), out);
                throw NegativeResult{};
            }
            emit(serialize(*res.certificate), out);
        } else if (render->parsed()) {
            emit(render_svg(parse_fan(slurp(fan_path))), out);
        }
    } catch (const NegativeResult&) {
        return 3;
    } catch (const ParseError& e) {
        std::cout << error_document("parse", "parse_error", e.what());
        return 4;
    } catch (const MathFailure& e) {
        std::cout << error_document("math", e.code(), e.what());
        return 3;
    } catch (const ValidationError& e) {
        std::cout << error_document("validation", "invalid_input", e.what());
        return 2;
    }
    return 0;
}
