// fatlines: command-line front end.
//
// Exit codes: 0 success, 2 invalid input, 3 computation failure,
// 4 classification inconsistent with the type, 5 I/O failure.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fatlines/fatlines.hpp"

using namespace fatlines;

namespace {

enum ExitCode { kOk = 0, kInput = 2, kCompute = 3, kInconsistent = 4, kIo = 5 };

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json value_json(const Rationals&, const BigRational& x) {
  if (x.get_den() == 1) return detail::integer_json(x.get_num());
  return x.get_str();
}

Json value_json(const PrimeField&, std::uint64_t x) { return x; }

template <Field F>
Json vector_json(const F& field, const Vec<F>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(value_json(field, x));
  return out;
}

template <Field F>
Json hyperplane_json(const F& field, const Hyperplane<F>& h) {
  Json out = Json::array();
  for (const auto& x : field.primitive_integers(h.form)) out.push_back(detail::integer_json(x));
  return out;
}

Json header(const std::string& command, const FieldSpec& field) {
  return Json{{"tool", "fatlines"}, {"version", kVersion}, {"field", to_string(field)}, {"command", command}};
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

template <class Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.rational()) return fn(Rationals{});
  return fn(PrimeField(spec.prime));
}

/// Loads a configuration document and runs `fn(config)` over its field.
template <class Fn>
int with_config(const std::string& path, const FieldSpec& fallback, Fn&& fn) {
  const auto doc = parse_json(read_input(path));
  const auto spec = document_field(doc, fallback);
  return with_field(spec, [&](const auto& field) {
    const auto config = config_from_json(field, doc);
    return fn(config, spec);
  });
}

template <Field F>
Json type_json(const F& field, const TypeReport<F>& t, bool witnesses) {
  Json j{{"alpha1", t.alpha1}, {"alpha2", t.alpha2}, {"t", t.t}};
  if (witnesses) {
    j["witness1"] = vector_json(field, t.witness1);
    j["witness2"] = vector_json(field, t.witness2);
  }
  return j;
}

template <Field F>
Json structure_json(const F& field, const StructureReport<F>& s) {
  Json j{{"kind", to_string(s.kind)}};
  if (s.plane) j["plane"] = hyperplane_json(field, *s.plane);
  if (s.star) {
    j["d"] = s.star->d;
    Json planes = Json::array();
    for (const auto& h : s.star->planes) planes.push_back(hyperplane_json(field, h));
    j["planes"] = std::move(planes);
    j["incidence"] = s.star->incidence;
  }
  return j;
}

template <Field F>
Json acm_json(const F& field, const AcmCertificate<F>& a) {
  Json comps = Json::array();
  for (const auto& c : a.comparisons) comps.push_back(Json{{"t", c.t}, {"delta", c.delta}, {"section", c.section}});
  return Json{{"tmax", a.tmax},
              {"hyperplane", hyperplane_json(field, a.hyperplane)},
              {"comparisons", std::move(comps)},
              {"verdict", a.verdict()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact alpha-invariants, Hilbert functions and classification of fat point and line configurations"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  std::string field_text;
  app.add_option("--field", field_text, "Ground field: Q or GFP:<prime> (default: $FATLINES_FIELD or Q)");

  std::string config_path;
  std::size_t m = 1, tmax = 0, mmax = 4, dmax = 5, size = 0, trials = 1, lines = 3;
  std::uint64_t seed = 0;
  std::string family, json_path, out_path;
  bool compact = false, no_witness = false, no_timing = false;
  std::optional<std::size_t> tmax_opt;

  auto* gen = app.add_subcommand("gen", "Generate a configuration as JSON");
  gen->add_option("--family", family,
                  "star-points | pseudostar | cone | coplanar | skew | fig2 | collinear | random-lines | json")
      ->required();
  gen->add_option("-d,--d,--n,--s,--size", size, "Family size parameter (d, n or s)");
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_option("--json", json_path, "Input document for --family json");
  gen->add_flag("--compact", compact, "Single-line JSON");

  auto* alpha_cmd = app.add_subcommand("alpha", "Least degree of the m-th symbolic power");
  alpha_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  alpha_cmd->add_option("--m", m, "Multiplicity")->check(CLI::PositiveNumber);

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Hilbert function of the m-th symbolic power");
  hilbert_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  hilbert_cmd->add_option("--m", m, "Multiplicity")->check(CLI::PositiveNumber);
  hilbert_cmd->add_option("--tmax", tmax, "Largest degree")->required();

  auto* type_cmd = app.add_subcommand("type", "alpha(Z), alpha(2Z) and minimal-degree witnesses");
  type_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  type_cmd->add_flag("--no-witness", no_witness, "Omit witnesses");

  auto* diffs_cmd = app.add_subcommand("diffs", "alpha sequence, its differences and Waldschmidt estimates");
  diffs_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  diffs_cmd->add_option("--mmax", mmax, "Largest multiplicity");

  auto* classify_cmd = app.add_subcommand("classify", "Type, structure and ACM certificate");
  classify_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  classify_cmd->add_option("--tmax", tmax_opt, "Largest degree compared (default: lines + 2)");
  classify_cmd->add_option("--seed", seed, "Seed for the generic hyperplane");
  classify_cmd->add_flag("--no-witness", no_witness, "Omit witnesses");

  auto* section_cmd = app.add_subcommand("section", "Generic hyperplane section of a line configuration");
  section_cmd->add_option("config", config_path, "Configuration JSON ('-' for stdin)")->required();
  section_cmd->add_option("--seed", seed, "Seed for the generic hyperplane");

  auto* verify_cmd = app.add_subcommand("verify", "Check the classification results on generated families");
  verify_cmd->add_option("--dmax", dmax, "Largest family size (>= 3)");
  verify_cmd->add_option("--seed", seed, "Generator seed");

  auto* explore_cmd = app.add_subcommand("explore", "Classify random line configurations, appending JSONL records");
  explore_cmd->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  explore_cmd->add_option("--lines", lines, "Lines per configuration")->check(CLI::PositiveNumber);
  explore_cmd->add_option("--seed", seed, "Base seed; trial i uses seed xor i");
  explore_cmd->add_option("--out", out_path, "JSONL output file (appended)")->required();
  explore_cmd->add_flag("--no-timing", no_timing, "Record elapsed_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    const FieldSpec default_field = field_text.empty() ? default_field_spec() : parse_field_spec(field_text);

    if (*gen) {
      GenSpec spec{parse_family(family), size, seed, default_field, {}};
      if (spec.family == Family::ExplicitJSON) {
        if (json_path.empty()) throw Error(ErrorKind::Usage, "--family json needs --json FILE");
        spec.json = read_input(json_path);
        spec.field = document_field(parse_json(spec.json), default_field);
      }
      return with_field(spec.field, [&](const auto& field) {
        std::cout << serialize_config(generate(field, spec), compact ? -1 : 2) << '\n';
        return kOk;
      });
    }

    if (*alpha_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        const auto a = alpha(config, m);
        auto j = header("alpha", spec);
        j["label"] = config.label;
        j["m"] = m;
        j["alpha"] = a.degree;
        j["witness"] = vector_json(config.field, a.witness);
        emit(j);
        return kOk;
      });
    }

    if (*hilbert_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        auto j = header("hilbert", spec);
        j["label"] = config.label;
        j["m"] = m;
        j["tmax"] = tmax;
        j["hilbert"] = hilbert_function(config, m, tmax);
        emit(j);
        return kOk;
      });
    }

    if (*type_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        auto j = header("type", spec);
        j["label"] = config.label;
        j.update(type_json(config.field, type_of(config, !no_witness), !no_witness));
        emit(j);
        return kOk;
      });
    }

    if (*diffs_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        if (mmax < 2) throw Error(ErrorKind::Usage, "--mmax must be at least 2");
        const auto seq = alpha_sequence(config, mmax);
        std::vector<std::size_t> diffs;
        Json wald = Json::array();
        for (std::size_t i = 0; i < seq.size(); ++i) {
          if (i > 0) diffs.push_back(seq[i] - seq[i - 1]);
          BigRational q(static_cast<unsigned long>(seq[i]), static_cast<unsigned long>(i + 1));
          q.canonicalize();
          wald.push_back(value_json(Rationals{}, q));
        }
        auto j = header("diffs", spec);
        j["label"] = config.label;
        j["mmax"] = mmax;
        j["alpha"] = seq;
        j["differences"] = diffs;
        j["waldschmidt"] = std::move(wald);
        emit(j);
        return kOk;
      });
    }

    if (*classify_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        const auto r = classify(config, tmax_opt, seed, !no_witness);
        auto j = header("classify", spec);
        j["label"] = config.label;
        j["seed"] = seed;
        j["type"] = type_json(config.field, r.type, !no_witness);
        j["structure"] = structure_json(config.field, r.structure);
        j["acm"] = r.acm ? acm_json(config.field, *r.acm) : Json(nullptr);
        j["forward"] = r.forward;
        j["backward"] = r.backward;
        j["theorem_consistent"] = r.theorem_consistent();
        emit(j);
        return r.theorem_consistent() ? kOk : kInconsistent;
      });
    }

    if (*section_cmd) {
      return with_config(config_path, default_field, [&](const auto& config, const FieldSpec& spec) {
        const auto& field = config.field;
        const auto r = check_bc_section(config, seed);
        auto j = header("section", spec);
        j["label"] = config.label;
        j["seed"] = seed;
        j["hyperplane"] = hyperplane_json(field, r.hyperplane);
        j["dropped_coordinate"] = r.section.chart.dropped;
        Json pts = Json::array();
        for (const auto& p : r.section.points) pts.push_back(vector_json(field, p.coords));
        j["points"] = std::move(pts);
        j["structure"] = structure_json(field, r.structure);
        j["section_type"] = type_json(field, r.section_type, false);
        j["lines_type"] = type_json(field, r.lines_type, false);
        j["alpha_match"] = r.alpha_match;
        j["alpha2_match"] = r.alpha2_match;
        j["chain"] = r.chain ? Json(*r.chain) : Json(nullptr);
        emit(j);
        return kOk;
      });
    }

    if (*verify_cmd) {
      if (dmax < 3) throw Error(ErrorKind::Usage, "--dmax must be at least 3");
      return with_field(default_field, [&](const auto& field) {
        const auto summary = run_verification(field, dmax, seed);
        std::cout << "fatlines " << kVersion << " verify dmax=" << dmax << " seed=" << seed
                  << " field=" << to_string(default_field) << '\n'
                  << format_summary(summary);
        return summary.all_pass() ? kOk : kInconsistent;
      });
    }

    if (*explore_cmd) {
      std::ofstream out(out_path, std::ios::app);
      if (!out) throw IoError("cannot open " + out_path);
      return with_field(default_field, [&](const auto& field) {
        std::size_t t1 = 0, failures = 0, interesting = 0;
        std::ostringstream hits;
        for (std::size_t trial = 0; trial < trials; ++trial) {
          const std::uint64_t trial_seed = seed ^ trial;
          const auto start = std::chrono::steady_clock::now();
          const auto config = generate(field, GenSpec{Family::RandomLines, lines, trial_seed, default_field, {}});
          const auto r = classify(config, std::nullopt, trial_seed, false);
          const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
          const bool hit = r.type.t == 1 && !r.acm->consistent();
          t1 += r.type.t == 1;
          failures += !r.acm->consistent();
          interesting += hit;
          if (hit) hits << "INTERESTING trial=" << trial << " seed=" << trial_seed << '\n';
          Json rec{{"version", kVersion},
                   {"field", to_string(default_field)},
                   {"trial", trial},
                   {"seed", trial_seed},
                   {"config_json", serialize_config(config, -1)},
                   {"alpha1", r.type.alpha1},
                   {"alpha2", r.type.alpha2},
                   {"t", r.type.t},
                   {"structure", to_string(r.structure.kind)},
                   {"acm_verdict", r.acm->verdict()},
                   {"interesting", hit},
                   {"elapsed_ms", no_timing ? 0 : elapsed}};
          out << rec.dump() << '\n';
          out.flush();
          if (!out) throw IoError("write to " + out_path + " failed");
        }
        std::cout << "fatlines " << kVersion << " explore trials=" << trials << " lines=" << lines
                  << " seed=" << seed << " field=" << to_string(default_field) << '\n'
                  << "t=1 hits: " << t1 << '\n'
                  << "acm failures: " << failures << '\n'
                  << "interesting (t=1 and not ACM): " << interesting << '\n'
                  << hits.str();
        if (interesting > 0) std::cerr << "explore: " << interesting << " interesting configuration(s) found\n";
        return kOk;
      });
    }
  } catch (const IoError& e) {
    std::cerr << "fatlines: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    std::cerr << "fatlines: " << e.what() << '\n';
    return e.is_input_error() ? kInput : kCompute;
  } catch (const std::exception& e) {
    std::cerr << "fatlines: " << e.what() << '\n';
    return kCompute;
  }
  return kOk;
}
