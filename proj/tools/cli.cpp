#include "cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "consec/engine.hpp"
#include "consec/errors.hpp"
#include "consec/io.hpp"
#include "consec/montecarlo.hpp"
#include "consec/oracle.hpp"

namespace consec::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct ShapeArgs {
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> s;
  std::uint64_t max_volume = kDefaultVolumeCap;

  SystemShape build() const {
    return validate_shape(static_cast<std::int64_t>(n.size()), n, s, max_volume);
  }
};

struct EngineArgs {
  std::uint32_t max_placements = 26;
  std::string path = "auto";
  int threads = 0;

  EngineConfig build() const {
    EngineConfig c;
    c.max_placements = max_placements;
    c.workers = threads;
    if (path == "direct") c.path = FastPath::direct_mask;
    else if (path == "zeta") c.path = FastPath::zeta;
    return c;
  }
};

void add_shape_options(CLI::App* cmd, ShapeArgs& args) {
  cmd->add_option("--n", args.n, "array extents, comma separated")->required()->delimiter(',');
  cmd->add_option("--s", args.s, "window extents, comma separated")->required()->delimiter(',');
  cmd->add_option("--max-volume", args.max_volume, "cap on the number of cells");
}

void add_engine_options(CLI::App* cmd, EngineArgs& args) {
  cmd->add_option("--max-placements", args.max_placements, "cap on |E| for exact computation");
  cmd->add_option("--path", args.path, "subset sweep: auto, direct or zeta")
      ->check(CLI::IsMember({"auto", "direct", "zeta"}));
  cmd->add_option("--threads", args.threads, "worker count (default: CONSEC_THREADS or all cores)");
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

json envelope(const char* command, const char* mode, const SystemShape& shape) {
  return {{"tool", kToolName},
          {"version", kVersion},
          {"command", command},
          {"mode", mode},
          {"d", shape.dimension()},
          {"n", shape.extents()},
          {"s", shape.window()}};
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

IntPolynomial target_polynomial(const SystemShape& shape, const EngineConfig& config,
                                const std::string& target) {
  return target == "p" ? failure_polynomial(shape, config)
                       : reliability_polynomial(shape, config);
}

/// Parses q as "a/b", a decimal, or (float mode only) anything strtod accepts.
double parse_float_q(const std::string& text) {
  try {
    return ExactRational::parse(text).to_double();
  } catch (const ShapeError&) {
  }
  double v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size())
    throw ShapeError("malformed q '" + text + "'");
  return v;
}

void check_unit(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw ShapeError("q must lie in [0, 1]");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact reliability of d-dimensional consecutive-k-out-of-n:F systems", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  ShapeArgs shape_args;
  EngineArgs engine_args;
  std::string target = "r";
  std::string format;
  const auto add_target = [&](CLI::App* cmd) {
    cmd->add_option("--target", target, "r (reliability) or p (failure)")
        ->check(CLI::IsMember({"r", "p"}));
  };

  auto* poly = app.add_subcommand("poly", "print the exact polynomial");
  add_shape_options(poly, shape_args);
  add_engine_options(poly, engine_args);
  add_target(poly);
  poly->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::string q_text;
  bool exact = false;
  auto* eval = app.add_subcommand("eval", "evaluate R or P at one q");
  add_shape_options(eval, shape_args);
  add_engine_options(eval, engine_args);
  add_target(eval);
  eval->add_option("--q", q_text, "component failure probability, decimal or a/b")->required();
  eval->add_flag("--exact", exact, "rational arithmetic; prints a reduced fraction");
  eval->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::vector<std::size_t> vary;
  std::uint32_t vary_to = 0;
  auto* count = app.add_subcommand("count", "number of failed configurations");
  add_shape_options(count, shape_args);
  add_engine_options(count, engine_args);
  auto* vary_opt = count->add_option("--vary", vary, "1-based axes to vary together")
                       ->delimiter(',');
  auto* to_opt = count->add_option("--to", vary_to, "last value of the varied axes");
  vary_opt->needs(to_opt);
  to_opt->needs(vary_opt);
  count->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  double q_min = 0.0, q_max = 1.0;
  std::int64_t steps = 100;
  std::string out_path;
  auto* curve = app.add_subcommand("curve", "reliability curve q,R");
  add_shape_options(curve, shape_args);
  add_engine_options(curve, engine_args);
  curve->add_option("--q-min", q_min);
  curve->add_option("--q-max", q_max);
  curve->add_option("--steps", steps, "number of intervals; steps + 1 rows");
  curve->add_option("--out", out_path, "output file (default: standard output)");
  curve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  bool check = false;
  std::uint32_t oracle_cap = kDefaultOracleCap;
  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration");
  add_shape_options(oracle, shape_args);
  add_engine_options(oracle, engine_args);
  oracle->add_flag("--check", check, "compare against the exact engine");
  oracle->add_option("--cap", oracle_cap, "largest N to enumerate");
  oracle->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  std::uint64_t samples = 100000;
  std::uint64_t seed = 1;
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of P");
  add_shape_options(mc, shape_args);
  mc->add_option("--q", q_text)->required();
  mc->add_option("--samples", samples)->check(CLI::PositiveNumber);
  mc->add_option("--seed", seed);
  mc->add_option("--threads", engine_args.threads);
  mc->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  if (format.empty()) format = curve->parsed() ? "csv" : "text";

  const auto start = Clock::now();
  try {
    const SystemShape shape = shape_args.build();
    const EngineConfig config = engine_args.build();

    if (poly->parsed()) {
      const auto p = target_polynomial(shape, config, target);
      if (format == "json") {
        json doc = envelope("poly", "exact", shape);
        doc.update(to_json(shape, p));
        doc["target"] = target;
        doc["elapsed_ms"] = elapsed_ms(start);
        out << doc.dump() << '\n';
      } else {
        out << p.to_text() << '\n';
      }
      return kOk;
    }

    if (eval->parsed()) {
      const auto p = target_polynomial(shape, config, target);
      std::string value;
      if (exact) {
        const auto q = ExactRational::parse(q_text);
        if (q < ExactRational(0) || ExactRational(1) < q) throw ShapeError("q must lie in [0, 1]");
        value = evaluate(p, q).to_string();
      } else {
        const double q = parse_float_q(q_text);
        check_unit(q);
        value = shortest(evaluate(p, q));
      }
      if (format == "json") {
        json doc = envelope("eval", "exact", shape);
        doc["target"] = target;
        doc["q"] = q_text;
        doc["exact"] = exact;
        doc["value"] = value;
        doc["elapsed_ms"] = elapsed_ms(start);
        out << doc.dump() << '\n';
      } else {
        out << value << '\n';
      }
      return kOk;
    }

    if (count->parsed()) {
      std::vector<std::string> values;
      if (!vary.empty()) {
        std::vector<std::size_t> axes;
        std::uint32_t first = 0;
        for (auto a : vary) {
          if (a < 1 || a > shape.dimension()) throw ShapeError("--vary axis out of range");
          axes.push_back(a - 1);
          first = std::max(first, shape.extent(a - 1));
        }
        if (vary_to < first) throw ShapeError("--to is below the starting extent");
        for (const auto& v : count_sequence(shape.extents(), shape.window(), axes, first, vary_to,
                                            config))
          values.push_back(v.get_str());
      } else {
        values.push_back(failed_count(shape, config).get_str());
      }
      if (format == "json") {
        json doc = envelope("count", "exact", shape);
        doc["counts"] = values;
        doc["elapsed_ms"] = elapsed_ms(start);
        out << doc.dump() << '\n';
      } else {
        std::string line;
        for (std::size_t i = 0; i < values.size(); ++i) line += (i ? "," : "") + values[i];
        out << line << '\n';
      }
      return kOk;
    }

    if (curve->parsed()) {
      check_unit(q_min);
      check_unit(q_max);
      if (steps < 1 || !(q_min < q_max)) throw ShapeError("empty or invalid q range");
      const auto r = reliability_polynomial(shape, config);
      std::vector<std::pair<double, double>> rows;
      for (std::int64_t i = 0; i <= steps; ++i) {
        const double q =
            i == steps ? q_max : q_min + (q_max - q_min) * static_cast<double>(i) / steps;
        rows.emplace_back(q, evaluate(r, q));
      }
      std::ofstream file;
      if (!out_path.empty()) {
        file.open(out_path);
        if (!file) throw ShapeError("cannot open '" + out_path + "' for writing");
      }
      std::ostream& sink = out_path.empty() ? out : file;
      if (format == "json") {
        json doc = envelope("curve", "exact", shape);
        json data = json::array();
        for (auto [q, v] : rows) data.push_back({q, v});
        doc["columns"] = {"q", "R"};
        doc["rows"] = std::move(data);
        doc["elapsed_ms"] = elapsed_ms(start);
        sink << doc.dump() << '\n';
      } else {
        sink << "q,R\n";
        for (auto [q, v] : rows) sink << shortest(q) << ',' << shortest(v) << '\n';
      }
      return kOk;
    }

    if (oracle->parsed()) {
      const auto tally = brute_force_tally(shape, oracle_cap, engine_args.threads);
      const auto p = tally_to_polynomial(tally);
      std::string verdict;
      if (check) verdict = failure_polynomial(shape, config) == p ? "MATCH" : "MISMATCH";
      std::vector<std::string> f;
      for (const auto& v : tally.f) f.push_back(v.get_str());
      if (format == "json") {
        json doc = envelope("oracle", "oracle", shape);
        doc.update(to_json(shape, p));
        doc["a"] = tally.total().get_str();
        doc["f"] = f;
        if (check) doc["check"] = verdict;
        doc["elapsed_ms"] = elapsed_ms(start);
        out << doc.dump() << '\n';
      } else {
        std::string list;
        for (std::size_t i = 0; i < f.size(); ++i) list += (i ? "," : "") + f[i];
        out << "a=" << tally.total().get_str() << '\n'
            << "f=[" << list << "]\n"
            << "P=" << p.to_text() << '\n';
        if (check) out << verdict << '\n';
      }
      if (verdict == "MISMATCH") {
        err << "oracle and exact engine disagree for " << shape.describe() << '\n';
        return kMismatch;
      }
      return kOk;
    }

    if (mc->parsed()) {
      const double q = parse_float_q(q_text);
      check_unit(q);
      const auto est = estimate_failure_probability(shape, q, samples, seed, engine_args.threads);
      if (format == "json") {
        json doc = envelope("mc", "montecarlo", shape);
        doc["q"] = est.q;
        doc["samples"] = est.samples;
        doc["failures"] = est.failures;
        doc["p_hat"] = est.p_hat;
        doc["stderr"] = est.std_error;
        doc["ci95"] = {est.ci_low, est.ci_high};
        doc["interval"] = est.interval;
        doc["seed"] = est.seed;
        doc["generator"] = est.generator;
        doc["batch_size"] = est.batch_size;
        doc["elapsed_ms"] = elapsed_ms(start);
        out << doc.dump() << '\n';
      } else {
        out << "p_hat=" << shortest(est.p_hat) << '\n'
            << "stderr=" << shortest(est.std_error) << '\n'
            << "ci95=[" << shortest(est.ci_low) << "," << shortest(est.ci_high) << "] ("
            << est.interval << ")\n"
            << "samples=" << est.samples << " failures=" << est.failures << '\n'
            << "seed=" << est.seed << " generator=" << est.generator
            << " batch_size=" << est.batch_size << '\n';
      }
      return kOk;
    }
  } catch (const ShapeError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace consec::cli
