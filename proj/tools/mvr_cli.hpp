#ifndef MVR_TOOLS_CLI_HPP
#define MVR_TOOLS_CLI_HPP

// The mvr command line: one subcommand per decision procedure.
// Exit codes: 0 decided or constructed, 1 negative answer, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mvr/fixtures.hpp"
#include "mvr/io.hpp"
#include "mvr/pwl.hpp"
#include "mvr/retract.hpp"
#include "mvr/svg.hpp"
#include "mvr/term.hpp"

namespace mvr::cli {

enum Exit : int { kDecided = 0, kNegative = 1, kInputError = 2 };

namespace detail {

using io::Json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json read_json(const std::string& path) { return io::parse(read_file(path)); }

inline std::vector<Term> parse_terms(const std::vector<std::string>& texts) {
  std::vector<Term> ts;
  for (const auto& s : texts) {
    try {
      ts.push_back(parse_term(s));
    } catch (const ParseError& e) {
      throw InputError("cannot parse term '" + s + "': " + e.what());
    }
  }
  return ts;
}

inline std::vector<std::string> split_terms(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';'))
    if (item.find_first_not_of(' ') != std::string::npos) out.push_back(item);
  return out;
}

// Where a Z-map comes from: inline terms, a fixture name, or a PwlMap file.
struct MapSource {
  std::vector<std::string> terms;
  std::string fixture;
  std::string file;
  std::size_t dim = 0;
  std::size_t stage = 0;

  void add_options(CLI::App* app, bool with_terms = true) {
    if (with_terms) app->add_option("terms", terms, "MV-terms, one per output coordinate");
    app->add_option("--fixture", fixture, "named fixture (see `fixture --list`)");
    app->add_option("--map", file, "PwlMap JSON file");
    app->add_option("--dim", dim, "ambient dimension (defaults to the number of terms)");
    app->add_option("--stage", stage, "stage of the fibonacci fixture");
  }

  int given() const { return (!terms.empty()) + (!fixture.empty()) + (!file.empty()); }

  PwlMap map() const {
    if (given() != 1) throw InputError("give exactly one of: terms, --fixture, --map");
    if (!file.empty()) return io::pwl_from_json(read_json(file));
    if (!fixture.empty()) return fixture_map(fixture, stage);
    auto ts = parse_terms(terms);
    std::size_t n = dim ? dim : ts.size();
    for (const auto& t : ts) n = std::max(n, arity(t));
    return compile(ts, n);
  }

  static PwlMap fixture_map(const std::string& name, std::size_t stage) {
    if (name == "fibonacci") {
      if (stage == 0) throw InputError("the fibonacci fixture needs --stage");
      return fibonacci_stage(stage).sigma.map;
    }
    return canonical(name).map;
  }
};

// Parses "fixture:NAME", "map:PATH" or ';'-separated terms.
inline PwlMap map_from_spec(const std::string& spec) {
  if (spec.rfind("fixture:", 0) == 0) {
    std::string rest = spec.substr(8);
    auto colon = rest.find(':');
    if (colon != std::string::npos) {
      std::size_t stage = 0;
      try {
        stage = std::stoul(rest.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError("bad stage in '" + spec + "'");
      }
      return MapSource::fixture_map(rest.substr(0, colon), stage);
    }
    return MapSource::fixture_map(rest, 0);
  }
  if (spec.rfind("map:", 0) == 0) return io::pwl_from_json(read_json(spec.substr(4)));
  MapSource s;
  s.terms = split_terms(spec);
  return s.map();
}

// A triangulation from a file, or the range of a retraction.
inline Triangulation triangulation_input(const std::string& file, const MapSource& src) {
  if (!file.empty()) {
    if (src.given()) throw InputError("give either --triangulation or a retraction, not both");
    return io::triangulation_from_json(read_json(file));
  }
  return verify_z_retraction(src.map()).range;
}

inline std::string point_text(const Point& p) { return to_string(p); }

inline std::string interval_text(const Triangulation& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += " + ";
    s += to_string(t.simplex(i));
  }
  return s.empty() ? "empty" : s;
}

}  // namespace detail

/// Runs one invocation; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::Json;
  CLI::App app{"Exact analysis of Z-retractions of the unit cube"};
  app.require_subcommand(1);
  std::string format = "human";
  std::size_t threads = 1;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"human", "structured"}))
      ->capture_default_str();
  app.add_option("--threads", threads, "worker threads for the search")->check(CLI::Range(1, 256));

  auto emit = [&](const Json& j, const std::string& human) {
    if (format == "structured")
      out << j.dump(2) << '\n';
    else
      out << human << '\n';
  };

  int code = kDecided;
  detail::MapSource src;
  std::vector<std::string> terms, specs, highlights;
  std::string at, tri_file, report_file, out_file, name;
  std::size_t dim = 0, stage = 0;
  long p = 0;
  bool no_labels = false, list = false;

  auto* eval = app.add_subcommand("eval", "evaluate a Z-map at a rational point");
  src.add_options(eval);
  eval->add_option("--at", at, "point as comma-separated rationals")->required();

  auto* taut = app.add_subcommand("tautology", "decide whether a term is a tautology");
  taut->add_option("term", terms, "MV-term")->required()->expected(1);
  taut->add_option("--dim", dim, "number of variables");

  auto* check = app.add_subcommand("check-retraction", "decide whether a map is a Z-retraction");
  src.add_options(check);

  auto* range = app.add_subcommand("range", "fixed-point set of a Z-retraction");
  src.add_options(range);

  auto* closed = app.add_subcommand("closed-domain", "is a polyhedron the closure of its interior");
  auto* connected = app.add_subcommand("interior-connected", "is the interior of a polyhedron connected");
  for (auto* sub : {closed, connected}) {
    src.add_options(sub);
    sub->add_option("--triangulation", tri_file, "triangulation JSON file");
  }

  auto* mult = app.add_subcommand("multiplicity", "number of Z-retractions onto the range");
  src.add_options(mult);

  auto* bounds = app.add_subcommand("index-bounds", "lower and upper bounds on the index");
  src.add_options(bounds);

  auto* same_r = app.add_subcommand("same-range", "do two retractions have the same range");
  auto* same_a = app.add_subcommand("same-algebra", "do two retractions present the same algebra");
  for (auto* sub : {same_r, same_a})
    sub->add_option("retractions", specs, "two specs: 'fixture:NAME', 'map:FILE' or terms separated by ';'")
        ->required()
        ->expected(2);

  auto* fix = app.add_subcommand("fixture", "print a named fixture");
  fix->add_option("name", name, "fixture name");
  fix->add_option("--stage", stage, "stage of the fibonacci fixture");
  fix->add_option("-p", p, "parameter of the wp fixture");
  fix->add_flag("--list", list, "list fixture names");

  auto* svg = app.add_subcommand("render-svg", "draw a planar triangulation");
  svg->add_option("input", tri_file, "triangulation, PwlMap or report JSON file")->required();
  svg->add_option("--highlight", highlights, "triangulation JSON files to fill");
  svg->add_option("--report", report_file, "multiplicity report whose certificates are filled");
  svg->add_option("-o,--output", out_file, "output file (stdout when absent)");
  svg->add_flag("--no-labels", no_labels, "omit vertex labels");

  std::vector<std::string> argv_store{"mvr"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kDecided;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kDecided;
    }
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  SearchOptions opt;
  opt.threads = threads;
  try {
    if (eval->parsed()) {
      PwlMap f = src.map();
      Point x = parse_point(at);
      Point y = f(x);
      emit(Json{{"point", io::point_to_json(x)}, {"image", io::point_to_json(y)}}, detail::point_text(y));
    } else if (taut->parsed()) {
      Term t = detail::parse_terms(terms)[0];
      auto w = tautology_witness(t, dim);
      code = w ? kNegative : kDecided;
      emit(Json{{"tautology", !w}, {"witness", w ? io::point_to_json(*w) : Json(nullptr)}},
           w ? "not a tautology; value " + to_string(evaluate(t, *w)) + " at " + detail::point_text(*w)
             : "tautology");
    } else if (check->parsed()) {
      try {
        auto s = verify_z_retraction(src.map());
        emit(Json{{"retraction", true}, {"witness", nullptr}, {"range", io::to_json(s.range)}},
             "Z-retraction onto " + detail::interval_text(s.range));
      } catch (const NotIdempotent& e) {
        code = kNegative;
        emit(Json{{"retraction", false}, {"witness", io::point_to_json(e.witness())}, {"range", nullptr}},
             "not a retraction: not idempotent at " + detail::point_text(e.witness()));
      }
    } else if (range->parsed()) {
      auto s = verify_z_retraction(src.map());
      emit(io::to_json(s.range), detail::interval_text(s.range));
    } else if (closed->parsed()) {
      Triangulation t = detail::triangulation_input(tri_file, src);
      bool ok = is_closed_domain(t);
      code = ok ? kDecided : kNegative;
      emit(Json{{"closed_domain", ok}}, ok ? "closed domain" : "not a closed domain");
    } else if (connected->parsed()) {
      Triangulation t = detail::triangulation_input(tri_file, src);
      bool ok = interior_connected(t);
      code = ok ? kDecided : kNegative;
      emit(Json{{"interior_connected", ok}, {"components", interior_components(t).size()}},
           ok ? "interior connected" : "interior not connected");
    } else if (mult->parsed()) {
      auto r = multiplicity(verify_z_retraction(src.map()), opt);
      std::string human;
      if (r.finite) {
        human = "FINITE(" + std::to_string(r.count) + ")";
        for (const auto& c : r.certificates) human += "\n  " + detail::interval_text(c);
      } else {
        human = "INFINITE; witness " + to_string(*r.witness);
      }
      emit(io::to_json(r), human);
    } else if (bounds->parsed()) {
      auto b = index_bounds(verify_z_retraction(src.map()));
      std::string human = b.unbounded ? "UNBOUNDED"
                                      : b.lower.str() + " <= index <= " + b.upper->str() +
                                            (b.lower == *b.upper ? " (index " + b.lower.str() + ")" : "");
      emit(io::to_json(b), human);
    } else if (same_r->parsed() || same_a->parsed()) {
      auto a = verify_z_retraction(detail::map_from_spec(specs[0]));
      auto b = verify_z_retraction(detail::map_from_spec(specs[1]));
      bool ok = same_r->parsed() ? same_range(a, b) : same_algebra(a, b);
      const char* key = same_r->parsed() ? "same_range" : "same_algebra";
      code = ok ? kDecided : kNegative;
      emit(Json{{key, ok}}, ok ? "yes" : "no");
    } else if (fix->parsed()) {
      if (list) {
        std::string human;
        Json names = Json::array();
        for (const auto& n : canonical_names()) names.push_back(n);
        for (const char* n : {"fibonacci", "wp", "l_shape"}) names.push_back(n);
        for (const auto& n : names) human += n.get<std::string>() + "\n";
        human.pop_back();
        emit(names, human);
      } else if (name == "wp") {
        if (p == 0) throw InputError("the wp fixture needs -p");
        auto t = wp_domain(p);
        emit(io::to_json(t), io::to_json(t).dump());
      } else if (name == "l_shape") {
        auto t = l_shape();
        emit(io::to_json(t), io::to_json(t).dump());
      } else if (name.empty()) {
        throw InputError("give a fixture name or --list");
      } else {
        auto f = detail::MapSource::fixture_map(name, stage);
        emit(io::to_json(f), io::to_json(f).dump());
      }
    } else if (svg->parsed()) {
      Json j = detail::read_json(tri_file);
      SvgOptions o;
      o.labels = !no_labels;
      Triangulation t;
      if (j.contains("verdict")) {
        auto r = io::report_from_json(j);
        if (!r.finite || r.certificates.empty()) throw InputError("report has no certificates to draw");
        t = r.certificates[0];
        for (std::size_t i = 1; i < r.certificates.size(); ++i) {
          std::vector<RationalSimplex> all;
          for (const auto* c : {&t, &r.certificates[i]})
            for (std::size_t s = 0; s < c->size(); ++s) all.push_back(c->simplex(s));
          t = from_simplexes(t.ambient_dim(), all);
        }
        o.highlights = r.certificates;
      } else if (j.contains("domain")) {
        t = io::pwl_from_json(j).domain();
      } else {
        t = io::triangulation_from_json(j);
      }
      for (const auto& h : highlights) o.highlights.push_back(io::triangulation_from_json(detail::read_json(h)));
      if (!report_file.empty()) {
        auto r = io::report_from_json(detail::read_json(report_file));
        o.highlights.insert(o.highlights.end(), r.certificates.begin(), r.certificates.end());
      }
      std::string text = render_svg(t, o);
      if (out_file.empty()) {
        out << text;
      } else {
        std::ofstream f(out_file, std::ios::binary);
        if (!f) throw InputError("cannot write '" + out_file + "'");
        f << text;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return code;
}

}  // namespace mvr::cli

#endif  // MVR_TOOLS_CLI_HPP
