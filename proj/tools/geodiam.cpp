#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "geodiam/candidates.hpp"
#include "geodiam/diameter.hpp"
#include "geodiam/domain.hpp"
#include "geodiam/json_io.hpp"
#include "geodiam/oracle.hpp"
#include "geodiam/spm.hpp"
#include "geodiam/svg.hpp"

namespace fs = std::filesystem;
using namespace geodiam;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kIo = 1, kValidation = 2, kInvariant = 3 };

struct IoError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw IoError("cannot write " + path);
}

PolygonalDomain load(const std::string& path) { return parse_domain(read_file(path)); }

Point parse_point(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw ParseError("expected x,y but got '" + text + "'");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw ParseError("expected x,y but got '" + text + "'");
    }
}

void require_inside(const PolygonalDomain& d, Point p, const char* what)
{
    if (!contains(d, p)) throw ValidationError("point_outside", std::string(what) + " lies outside the domain");
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

int report_error(const char* kind, const std::string& message, const std::string& code = {})
{
    json j{{"error", kind}, {"message", message}};
    if (!code.empty()) j["code"] = code;
    std::cerr << j.dump() << '\n';
    return 0;
}

struct Common {
    std::string path;
    unsigned threads = 0;
};

json corpus_entry(const DomainSpec& spec, const std::string& file, const PolygonalDomain& d)
{
    return {{"file", file},
            {"seed", spec.seed},
            {"n_outer", spec.n_outer},
            {"n_holes", spec.n_holes},
            {"hole_size_range", {spec.hole_size_range.first, spec.hole_size_range.second}},
            {"n", d.n()}};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Geodesic diameter of polygonal domains with holes"};
    app.require_subcommand(1);
    Common common;

    auto add_path = [&](CLI::App* sub) { sub->add_option("domain", common.path, "Domain JSON file")->required(); };

    CLI::App* validate = app.add_subcommand("validate", "Check a domain file and print its canonical form");
    add_path(validate);

    CLI::App* distance = app.add_subcommand("distance", "Geodesic distance and shortest path between two points");
    add_path(distance);
    std::string from_text, to_text;
    distance->add_option("--from", from_text, "Start point x,y")->required();
    distance->add_option("--to", to_text, "End point x,y")->required();

    CLI::App* spm = app.add_subcommand("spm", "Shortest path map from a vertex or point");
    add_path(spm);
    int source_index = -1;
    std::string point_text;
    auto* src_opt = spm->add_option("--source", source_index, "Source vertex index");
    auto* pt_opt = spm->add_option("--point", point_text, "Source point x,y");
    src_opt->excludes(pt_opt);
    pt_opt->excludes(src_opt);

    CLI::App* candidates = app.add_subcommand("candidates", "Candidate diameter endpoints of every class");
    add_path(candidates);
    bool with_overlay = false;
    candidates->add_flag("--overlay", with_overlay, "Also list overlay nodes (small domains only)");
    candidates->add_option("--threads", common.threads, "Worker threads (default: GEODIAM_THREADS or all cores)");

    CLI::App* diameter = app.add_subcommand("diameter", "Geodesic diameter");
    add_path(diameter);
    DiameterOptions dopt;
    bool vertex_only = false, with_report = false;
    diameter->add_flag("--prune", dopt.prune, "Skip candidates that cannot beat the vertex diameter");
    diameter->add_flag("--vertex-only", vertex_only, "Only vertex endpoints");
    diameter->add_flag("--report", with_report, "Append counts and timings");
    diameter->add_option("--top", dopt.top_k, "Runner-ups to list besides ties")->check(CLI::NonNegativeNumber);
    diameter->add_option("--threads", common.threads, "Worker threads (default: GEODIAM_THREADS or all cores)");

    CLI::App* oracle = app.add_subcommand("oracle", "Sampling lower bound, hill climbing and fixture generation");
    oracle->add_option("domain", common.path, "Domain JSON file");
    double resolution = 0.0;
    bool improve = false;
    std::string generate_dir;
    DomainSpec gen;
    int gen_count = 1;
    oracle->add_option("--resolution", resolution, "Sample spacing (default: scale / 50)");
    oracle->add_flag("--improve", improve, "Hill-climb the best sample pair");
    oracle->add_option("--threads", common.threads, "Worker threads (default: GEODIAM_THREADS or all cores)");
    oracle->add_option("--generate", generate_dir, "Write random domains and an index.json into this directory");
    oracle->add_option("--seed", gen.seed, "First seed");
    oracle->add_option("--count", gen_count, "Number of consecutive seeds")->check(CLI::PositiveNumber);
    oracle->add_option("--n-outer", gen.n_outer, "Outer ring vertex count")->check(CLI::Range(3, 100000));
    oracle->add_option("--holes", gen.n_holes, "Number of holes")->check(CLI::NonNegativeNumber);
    oracle->add_option("--hole-size", gen.hole_size_range, "Hole radius range as a fraction of the outer radius");

    CLI::App* render = app.add_subcommand("render", "Draw the domain and optional overlays as SVG");
    add_path(render);
    std::string out_path;
    RenderSpec rspec;
    int render_source = -1;
    bool render_candidates = false, render_diameter = false;
    double render_oracle = 0.0;
    render->add_option("--out", out_path, "SVG output file")->required();
    render->add_option("--width", rspec.width_px, "Width in pixels")->check(CLI::Range(64, 100000));
    render->add_option("--spm-source", render_source, "Draw the shortest path map from this vertex");
    render->add_flag("--candidates", render_candidates, "Draw candidate endpoints");
    render->add_flag("--diameter", render_diameter, "Draw the diameter path");
    render->add_option("--oracle", render_oracle, "Draw oracle samples at this resolution");
    render->add_option("--threads", common.threads, "Worker threads (default: GEODIAM_THREADS or all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kIo;
    }

    try {
        if (validate->parsed()) {
            const PolygonalDomain d = load(common.path);
            std::cerr << "valid: n=" << d.n() << " holes=" << d.hole_count() << (d.reoriented() ? " (reoriented)" : "") << '\n';
            emit({{"valid", true}, {"n", d.n()}, {"holes", d.hole_count()}, {"reoriented", d.reoriented()}, {"domain", domain_to_json(d)}});
        } else if (distance->parsed()) {
            const PolygonalDomain d = load(common.path);
            const Point p = parse_point(from_text), q = parse_point(to_text);
            require_inside(d, p, "--from");
            require_inside(d, q, "--to");
            const GeodesicPath path = geodesic_distance(d, p, q);
            std::cerr << "distance " << path.length << " via " << path.bends.size() << " bends\n";
            emit(to_json(path));
        } else if (spm->parsed()) {
            const PolygonalDomain d = load(common.path);
            Point s;
            if (!point_text.empty()) {
                s = parse_point(point_text);
                require_inside(d, s, "--point");
            } else {
                if (source_index < 0 || source_index >= d.n())
                    throw ValidationError("bad_source", "--source must be a vertex index in [0, " + std::to_string(d.n()) + ")");
                s = d.vertex(source_index);
            }
            const ShortestPathMap m = build_spm(d, s);
            std::cerr << "spm: " << m.anchors.size() << " anchors, " << m.arcs.size() << " arcs, " << m.vertices.size() << " vertices\n";
            emit(to_json(m));
        } else if (candidates->parsed()) {
            const PolygonalDomain d = load(common.path);
            const VisibilityGraph g = build_visibility_graph(d);
            const std::vector<ShortestPathMap> maps = detail::vertex_maps(g, resolve_threads(common.threads));
            const std::vector<PlausibleTuple> tuples = plausible_tuples(bisector_adjacency(d, maps));
            std::vector<CandidatePoint> all = vertex_candidates(d);
            std::size_t counts[5] = {all.size(), 0, 0, 0, 0};
            for (auto list : {boundary_foot_candidates(maps), triple_point_candidates(maps), plausible_nodes(d, maps, tuples)}) {
                std::sort(list.begin(), list.end(), detail::candidate_order);
                for (const auto& c : list) ++counts[static_cast<int>(c.kind)];
                all.insert(all.end(), list.begin(), list.end());
            }
            if (with_overlay) {
                const auto overlay = overlay_nodes(d, maps);
                counts[4] = overlay.size();
                all.insert(all.end(), overlay.begin(), overlay.end());
            }
            std::cerr << "candidates: " << counts[0] << " vertices, " << counts[1] << " boundary feet, " << counts[2] << " triple points, "
                      << counts[3] << " plausible nodes (" << tuples.size() << " plausible tuples)";
            if (with_overlay) std::cerr << ", " << counts[4] << " overlay nodes";
            std::cerr << '\n';
            json arr = json::array();
            for (const auto& c : all) arr.push_back(to_json(c));
            emit(arr);
        } else if (diameter->parsed()) {
            const PolygonalDomain d = load(common.path);
            const VisibilityGraph g = build_visibility_graph(d);
            dopt.threads = common.threads;
            json out;
            if (vertex_only) {
                const auto t0 = std::chrono::steady_clock::now();
                const DiameterResult r = diameter_vertex_only(g, dopt);
                out = to_json(r);
                AlgorithmReport rep;
                rep.n = d.n();
                rep.holes = static_cast<int>(d.hole_count());
                rep.vertex_only = true;
                rep.vertex_candidates = static_cast<std::size_t>(d.n());
                rep.evaluated = rep.vertex_candidates;
                rep.threads = resolve_threads(dopt.threads);
                rep.timings_ms.emplace_back("total", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
                if (with_report) out["report"] = to_json(rep);
                std::cerr << "vertex-only diameter " << r.distance << '\n';
            } else {
                const auto [r, rep] = compute_diameter(g, dopt);
                out = to_json(r);
                if (with_report) out["report"] = to_json(rep);
                std::cerr << "diameter " << r.distance << " from " << to_string(r.p_provenance.kind) << " candidate; " << rep.evaluated
                          << " candidates evaluated\n";
            }
            emit(out);
        } else if (oracle->parsed()) {
            if (!generate_dir.empty()) {
                fs::create_directories(generate_dir);
                json index = json::array();
                for (int k = 0; k < gen_count; ++k) {
                    DomainSpec spec = gen;
                    spec.seed = gen.seed + static_cast<std::uint64_t>(k);
                    const PolygonalDomain d = random_domain(spec);
                    const std::string file = "domain_s" + std::to_string(spec.seed) + "_n" + std::to_string(spec.n_outer) + "_h" +
                                             std::to_string(spec.n_holes) + ".json";
                    write_file((fs::path(generate_dir) / file).string(), serialize_domain(d) + "\n");
                    index.push_back(corpus_entry(spec, file, d));
                }
                write_file((fs::path(generate_dir) / "index.json").string(), index.dump(2) + "\n");
                std::cerr << "wrote " << gen_count << " domains to " << generate_dir << '\n';
                emit(index);
            } else {
                if (common.path.empty()) throw ValidationError("missing_domain", "oracle needs a domain file or --generate");
                const PolygonalDomain d = load(common.path);
                const VisibilityGraph g = build_visibility_graph(d);
                const double res = resolution > 0.0 ? resolution : d.scale() / 50.0;
                const SampleDiameter s = sample_diameter(g, res, resolve_threads(common.threads));
                json out{{"resolution", res}, {"samples", s.sample_count}, {"p", to_json(s.p)}, {"q", to_json(s.q)}, {"distance", s.distance}};
                if (improve) {
                    const LocalPair lp = local_improvement(g, s.p, s.q);
                    out["improved"] = {{"p", to_json(lp.p)}, {"q", to_json(lp.q)}, {"distance", lp.distance}};
                }
                std::cerr << "sample lower bound " << s.distance << " over " << s.sample_count << " samples\n";
                emit(out);
            }
        } else if (render->parsed()) {
            const PolygonalDomain d = load(common.path);
            const VisibilityGraph g = build_visibility_graph(d);
            RenderLayers layers;
            ShortestPathMap m;
            if (render_source >= 0) {
                if (render_source >= d.n()) throw ValidationError("bad_source", "--spm-source must be a vertex index");
                m = build_spm(g, d.vertex(render_source));
                layers.maps.push_back(&m);
            }
            std::pair<DiameterResult, AlgorithmReport> dia;
            if (render_candidates || render_diameter) {
                const unsigned threads = resolve_threads(common.threads);
                if (render_candidates) {
                    const auto maps = detail::vertex_maps(g, threads);
                    layers.candidates = vertex_candidates(d);
                    for (auto list : {boundary_foot_candidates(maps), triple_point_candidates(maps),
                                      plausible_nodes(d, maps, plausible_tuples(bisector_adjacency(d, maps)))})
                        layers.candidates.insert(layers.candidates.end(), list.begin(), list.end());
                }
                if (render_diameter) {
                    DiameterOptions o;
                    o.threads = threads;
                    dia = compute_diameter(g, o);
                    layers.diameter = &dia.first;
                }
            }
            if (render_oracle > 0.0) layers.oracle_points = make_samples(d, render_oracle).points;
            write_file(out_path, render_svg(d, layers, rspec));
            std::cerr << "wrote " << out_path << '\n';
            emit({{"out", out_path}});
        }
    } catch (const IoError& e) {
        report_error("io", e.what());
        return kIo;
    } catch (const ParseError& e) {
        report_error("parse", e.what());
        return kIo;
    } catch (const ValidationError& e) {
        report_error("validation", e.what(), e.code);
        return kValidation;
    } catch (const ResolutionTooCoarse& e) {
        report_error("validation", e.what(), "resolution_too_coarse");
        return kValidation;
    } catch (const GenerationFailed& e) {
        report_error("validation", e.what(), "generation_failed");
        return kValidation;
    } catch (const fs::filesystem_error& e) {
        report_error("io", e.what());
        return kIo;
    } catch (const std::exception& e) {
        report_error("invariant", e.what());
        return kInvariant;
    }
    return kOk;
}
