// vsacap command line: size, encode, query, experiment, calibrate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vsacap/harness.hpp"
#include "vsacap/rng.hpp"
#include "vsacap/serialize.hpp"

using namespace vsacap;

namespace {

constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct Globals {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out;
  bool seed_set = false;
  bool threads_set = false;
};

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream is(path);
  if (!is) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(out);
  if (!os || !(os << text)) throw IoError("cannot write " + out);
}

// "key=value" pairs into a parameter map.
std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected key=value, got " + item);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item.substr(eq + 1), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() - eq - 1) throw std::invalid_argument("not a number: " + item);
    out[item.substr(0, eq)] = v;
  }
  return out;
}

struct EncodeOpts {
  std::string arch;
  std::string input;
  std::string codebook;
  std::string kind;
  std::uint64_t m = 0, d = 0;
  std::uint32_t k = 0;
  bool scaled = false;
  std::optional<std::uint64_t> tie_seed;
  std::optional<std::uint64_t> d_seed;
};

Codebook encode_codebook(const EncodeOpts& o, const Globals& g, const SymbolSet& v) {
  if (!o.codebook.empty()) return Codebook::from_json(read_json(o.codebook));
  const auto arch = arch_from_string(o.arch);
  CodebookKind kind = CodebookKind::dense_sign;
  if (!o.kind.empty()) {
    kind = codebook_kind_from_string(o.kind);
  } else if (arch == Arch::bloom) {
    kind = CodebookKind::sparse_binary_trials;
  } else if (arch == Arch::cbloom) {
    kind = CodebookKind::sparse_binary_exact;
  }
  if (o.m == 0) throw std::invalid_argument("encode needs --m or --codebook");
  const bool scaled = o.scaled || arch == Arch::mapi || arch == Arch::hopfield;
  return Codebook(CodebookParams{kind, o.m, o.d ? o.d : v.universe(), o.k, g.seed, scaled});
}

int cmd_encode(const EncodeOpts& o, const Globals& g) {
  if (g.out.empty()) throw std::invalid_argument("encode needs --out");
  const auto v = SymbolSet::from_json(read_json(o.input));
  const auto cb = encode_codebook(o, g, v);
  const auto arch = arch_from_string(o.arch);
  AnyBundle b = [&]() -> AnyBundle {
    switch (arch) {
      case Arch::mapi: return sketch(cb, v);
      case Arch::mapb: return bundle_sign(cb, v, o.tie_seed);
      case Arch::bloom: return bundle_bloom(cb, v);
      case Arch::cbloom: return bundle_count(cb, v);
      default: return hpm_encode(cb, v, o.d_seed.value_or(rng::split(cb.seed(), 8)));
    }
  }();
  save_bundle(g.out, b);
  nlohmann::json info = {{"arch", to_string(arch)}, {"m", cb.m()}, {"codebook", cb.to_json()}, {"out", g.out}};
  std::cout << info.dump() << '\n';
  return 0;
}

struct QueryOpts {
  std::string bundle;
  std::optional<std::uint64_t> member;
  std::string other;
  bool norm = false;
  double delta = 0.05;
};

nlohmann::json bloom_json(const BloomEstimate& e) {
  return {{"estimate", std::isfinite(e.value) ? nlohmann::json(e.value) : nlohmann::json(nullptr)},
          {"saturated", e.saturated}};
}

int cmd_query(const QueryOpts& o, const Globals& g) {
  const int modes = o.member.has_value() + !o.other.empty() + o.norm;
  if (modes != 1) throw std::invalid_argument("query needs exactly one of --member, --intersect, --norm");
  const auto b = load_bundle(o.bundle);
  nlohmann::json r = {{"arch", to_string(arch_of(b))}};
  if (o.member) {
    const auto* x = std::get_if<MapBBundle>(&b);
    if (!x) throw std::invalid_argument("--member needs a mapb bundle");
    const auto res = membership_test(*x, *o.member, o.delta);
    r.update({{"query", "member"}, {"symbol", *o.member}, {"in", res.in}, {"score", res.score},
              {"threshold", res.threshold}, {"depth_warning", res.depth_warning}});
  } else if (o.norm) {
    r["query"] = "norm";
    std::visit(
        [&](const auto& x) {
          using B = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<B, MapIBundle>) r["estimate"] = norm_sq_estimate(x);
          else if constexpr (std::is_same_v<B, BloomBundle>) r.update(bloom_json(size_estimate(x)));
          else if constexpr (std::is_same_v<B, CountBundle>) r["estimate"] = static_cast<double>(x.mass()) / x.k();
          else if constexpr (std::is_same_v<B, HpmBundle>) r["estimate"] = hpm_norm_estimate(x);
          else throw std::invalid_argument("--norm is not defined for mapb bundles");
        },
        b);
  } else {
    const auto other = load_bundle(o.other);
    if (other.index() != b.index()) throw std::invalid_argument("bundles of different architectures");
    r["query"] = "intersect";
    std::visit(
        [&](const auto& x) {
          using B = std::decay_t<decltype(x)>;
          const auto& y = std::get<B>(other);
          if constexpr (std::is_same_v<B, MapIBundle>) {
            r["estimate"] = dot_estimate(x, y);
            r["rounded"] = intersection_estimate(x, y);
          } else if constexpr (std::is_same_v<B, MapBBundle>) {
            const auto e = empty_intersection_test(x, y, o.delta);
            r.update({{"nonempty", e.nonempty}, {"score", e.score}, {"threshold", e.threshold}});
          } else if constexpr (std::is_same_v<B, BloomBundle>) {
            r.update(bloom_json(intersection_estimate(x, y)));
          } else if constexpr (std::is_same_v<B, CountBundle>) {
            r["estimate"] = generalized_intersection_estimate(x, y);
          } else {
            r["estimate"] = hpm_dot_estimate(x, y);
          }
        },
        b);
  }
  emit(r.dump() + "\n", g.out);
  return 0;
}

int cmd_experiment(const std::string& config_path, const Globals& g) {
  auto j = read_json(config_path);
  auto config = ExperimentConfig::from_json(j);
  if (g.seed_set) config.seed = g.seed;
  if (g.threads_set) config.threads = g.threads;
  if (!g.out.empty()) config.out = g.out;
  const auto cells = run(config);
  std::ostringstream csv;
  write_csv(csv, config, cells);
  emit(csv.str(), config.out);
  if (!config.out.empty() && config.out != "-") emit(sidecar_json(config, cells).dump(2) + "\n", config.out + ".json");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vsacap: capacity toolkit for vector symbolic architectures"};
  app.require_subcommand(1);
  Globals g;
  auto* seed_opt = app.add_option("--seed", g.seed, "master seed");
  auto* threads_opt = app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "output path");

  std::string arch, task;
  std::vector<std::string> params;

  auto* size = app.add_subcommand("size", "print the sizing result as JSON");
  size->fallthrough();
  size->add_option("arch", arch, "mapi, mapb, bloom, cbloom or hopfield")->required();
  size->add_option("task", task, "sizing task")->required();
  size->add_option("params", params, "key=value parameters");

  EncodeOpts enc;
  auto* encode = app.add_subcommand("encode", "encode a symbol set JSON into a bundle file");
  encode->fallthrough();
  encode->add_option("--arch", enc.arch)->required();
  encode->add_option("--input", enc.input, "symbol set JSON, - for stdin")->required();
  encode->add_option("--codebook", enc.codebook, "codebook JSON");
  encode->add_option("--kind", enc.kind);
  encode->add_option("--m", enc.m);
  encode->add_option("--d", enc.d);
  encode->add_option("--k", enc.k);
  encode->add_flag("--scaled", enc.scaled, "scaled columns (always on for mapi and hopfield)");
  encode->add_option("--tie-seed", enc.tie_seed);
  encode->add_option("--d-seed", enc.d_seed);

  QueryOpts q;
  auto* query = app.add_subcommand("query", "query a bundle file");
  query->fallthrough();
  query->add_option("bundle", q.bundle)->required();
  query->add_option("--member", q.member, "MAP-B membership of a symbol");
  query->add_option("--intersect", q.other, "second bundle file");
  query->add_flag("--norm", q.norm);
  query->add_option("--delta", q.delta);

  std::string config_path;
  auto* experiment = app.add_subcommand("experiment", "run a Monte Carlo config and write CSV");
  experiment->fallthrough();
  experiment->add_option("config", config_path)->required();

  double target = 0.05;
  std::uint64_t trials = 200;
  auto* calib = app.add_subcommand("calibrate", "find the smallest m meeting a failure rate");
  calib->fallthrough();
  calib->add_option("arch", arch)->required();
  calib->add_option("task", task)->required();
  calib->add_option("params", params, "key=value parameters");
  calib->add_option("--target", target);
  calib->add_option("--trials", trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }
  g.seed_set = seed_opt->count() > 0;
  g.threads_set = threads_opt->count() > 0;

  try {
    if (*size) {
      const auto r = vsacap::size(arch_from_string(arch), task, SizingParams::from_map(parse_params(params)));
      emit(r.to_json().dump(2) + "\n", g.out);
      return 0;
    }
    if (*encode) return cmd_encode(enc, g);
    if (*query) return cmd_query(q, g);
    if (*experiment) return cmd_experiment(config_path, g);
    if (*calib) {
      const auto r = calibrate(arch, task, parse_params(params), target, trials, g.seed, g.threads);
      emit(r.to_json().dump(2) + "\n", g.out);
      return 0;
    }
  } catch (const IoError& e) {
    std::cerr << "vsacap: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "vsacap: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::out_of_range& e) {
    std::cerr << "vsacap: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "vsacap: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "vsacap: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
