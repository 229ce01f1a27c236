#include "geomdet/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "geomdet/code_distance.hpp"
#include "geomdet/detection.hpp"
#include "geomdet/embedding.hpp"
#include "geomdet/error.hpp"
#include "geomdet/figure.hpp"
#include "geomdet/parallel.hpp"
#include "geomdet/spec_io.hpp"

namespace geomdet::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DecoderDisagreement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FigureInvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string spec_path;
  std::string prior;
  std::uint64_t seed = default_seed;
  std::string out_dir = ".";
  int threads = 0;

  std::vector<std::string> observations;
  bool read_stdin = false;
  std::size_t repetition = 0;
  bool sequence = false;

  std::vector<std::size_t> repetitions{1};
  std::uint64_t trials = 10'000;

  std::string method = "auto";
  std::size_t samples = 100'000;
  std::size_t points = 256;
  std::string codebook;

  std::string y_grid = "-5:5:201";
};

std::string join(std::span<const double> values, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += sep;
    s += format_number(values[i]);
  }
  return s;
}

std::string symbol_name(std::size_t i) { return "x" + std::to_string(i + 1); }

std::string codeword_text(const Codeword& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(c[i] + 1);
  }
  return s;
}

// Everything a subcommand needs once paths and the spec are validated.
struct Session {
  RunConfig config;
  ChannelSpec spec;
  fs::path out;
  std::string command;

  std::string provenance() const {
    std::ostringstream s;
    s << tool_version << " command=" << command << " spec=" << spec.digest
      << " seed=" << config.seed;
    return s.str();
  }

  void write(const std::string& name, const std::string& body, bool csv = true) const {
    std::ofstream f(out / name, std::ios::binary);
    if (!f) throw UsageError("cannot write '" + (out / name).string() + "'");
    if (csv) f << "# " << provenance() << "\n";
    f << body;
  }
};

Session open_session(const RunConfig& config, const std::string& command) {
  if (!fs::exists(config.spec_path))
    throw SpecError("spec file '" + config.spec_path + "' does not exist");
  if (!config.codebook.empty() && !fs::exists(config.codebook))
    throw UsageError("codebook file '" + config.codebook + "' does not exist");
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (!fs::is_directory(config.out_dir))
    throw UsageError("cannot use output directory '" + config.out_dir + "'");
  if (config.threads > 0) set_worker_count(config.threads);

  ChannelSpec spec = load_channel_spec(config.spec_path);
  if (!config.prior.empty()) {
    std::vector<double> p;
    std::stringstream fields(config.prior);
    std::string field;
    try {
      while (std::getline(fields, field, ',')) p.push_back(std::stod(field));
      if (p.size() != symbol_count(spec.channel))
        throw SpecError("prior override length does not match the alphabet");
      spec.prior = Prior(std::move(p));
    } catch (const std::invalid_argument& e) {
      throw SpecError(std::string("bad prior override: ") + e.what());
    }
  }
  return Session{config, std::move(spec), fs::path(config.out_dir), command};
}

std::vector<std::string> gather_observations(const RunConfig& config, std::istream& in) {
  std::vector<std::string> obs = config.observations;
  if (config.read_stdin) {
    std::string line;
    while (std::getline(in, line)) {
      line.erase(line.find_last_not_of(" \t\r") + 1);
      line.erase(0, line.find_first_not_of(" \t"));
      if (!line.empty()) obs.push_back(line);
    }
  }
  return obs;
}

SequenceObservation parse_all(const Channel& channel, const std::vector<std::string>& texts) {
  SequenceObservation seq;
  for (const auto& t : texts) {
    try {
      seq.push_back(parse_observation(channel, t));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return seq;
}

void cmd_embed(const Session& s, std::istream& in, std::ostream& out) {
  const Channel& channel = s.spec.channel;
  const Alphabet& alphabet = alphabet_of(channel);
  const std::size_t n = alphabet.size();

  std::ostringstream symbols;
  symbols << "index,label";
  for (std::size_t i = 0; i < n; ++i) symbols << ",c" << i + 1;
  symbols << "\n";
  for (std::size_t i = 0; i < n; ++i)
    symbols << i + 1 << "," << alphabet.label(i) << ","
            << join(embed_symbol(n, i).coords(), ",") << "\n";
  s.write("symbols.csv", symbols.str());
  out << "symbols -> " << (s.out / "symbols.csv").string() << "\n";

  const auto texts = gather_observations(s.config, in);
  if (texts.empty()) return;
  const SequenceObservation seq = parse_all(channel, texts);
  std::ostringstream rows;
  rows << "observation";
  for (std::size_t i = 0; i < n; ++i) rows << ",c" << i + 1;
  rows << "\n";
  for (std::size_t k = 0; k < seq.size(); ++k) {
    const EmbeddedPoint y = embed_channel_observation(channel, s.spec.prior, seq[k]);
    rows << texts[k] << "," << join(y.coords(), ",") << "\n";
    out << texts[k] << ": " << join(y.coords(), ", ") << "\n";
  }
  s.write("observations.csv", rows.str());
}

void print_decision(std::ostream& out, const std::string& heading, const Decision& d) {
  out << heading << "decision: " << symbol_name(d.chosen);
  if (d.tie) {
    out << " (TIE with ";
    bool first = true;
    for (std::size_t k : d.tied) {
      if (k == d.chosen) continue;
      out << (first ? "" : ", ") << symbol_name(k);
      first = false;
    }
    out << ")";
  }
  out << ", posterior " << format_number(d.posterior[d.chosen]) << "\n";
  out << "  posteriors: " << join(d.posterior.values(), ", ") << "\n";
  out << "  margin: " << format_number(d.margin) << "\n";
}

void cmd_decode(const Session& s, std::istream& in, std::ostream& out) {
  const Channel& channel = s.spec.channel;
  const auto texts = gather_observations(s.config, in);
  if (texts.empty()) throw UsageError("decode needs at least one observation");
  const SequenceObservation seq = parse_all(channel, texts);

  if (s.config.repetition > 0) {
    if (seq.size() != s.config.repetition)
      throw UsageError("--repetition " + std::to_string(s.config.repetition) +
                       " expects that many observations, got " +
                       std::to_string(seq.size()));
    if (!s.spec.prior.is_uniform())
      throw UsageError("repetition decoding requires a uniform prior");
    print_decision(out, "repetition M=" + std::to_string(seq.size()) + " ",
                   decide_repetition(channel, seq));
    return;
  }
  if (s.config.sequence) {
    const SequenceDecision d = decide_sequence(channel, s.spec.prior, seq);
    out << "sequence decision: " << codeword_text(d.codeword) << (d.tie ? " (TIE)" : "")
        << ", posterior "
        << format_number(sequence_posterior(channel, s.spec.prior, seq, d.codeword))
        << "\n";
    return;
  }
  for (std::size_t k = 0; k < seq.size(); ++k)
    print_decision(out, texts[k] + ": ", decide(channel, s.spec.prior, seq[k]));
}

void cmd_simulate(const Session& s, std::ostream& out) {
  const Channel& channel = s.spec.channel;
  const std::string family = family_name(channel);
  const auto parameter = noise_parameter(channel);
  std::ostringstream csv;
  csv << "channel,sigma2_or_lambda,M,trials,symbol_index,errors,erasures,agreement\n";
  bool all_agree = true;
  for (std::size_t m : s.config.repetitions) {
    const SimulationReport r =
        simulate_error_rate(channel, s.spec.prior, m, s.config.trials, s.config.seed);
    const std::string param = parameter ? format_number(*parameter) : "";
    for (std::size_t i = 0; i < r.per_symbol.size(); ++i)
      csv << family << "," << param << "," << m << "," << r.per_symbol[i].sent << ","
          << i + 1 << "," << r.per_symbol[i].errors << "," << r.per_symbol[i].erasures
          << "," << (r.decoders_agree() ? 1 : 0) << "\n";
    std::uint64_t errors = 0;
    for (const auto& c : r.per_symbol) errors += c.errors;
    csv << family << "," << param << "," << m << "," << r.trials << ",all," << errors
        << "," << r.erasures() << "," << r.agreement << "\n";
    out << "M=" << m << ": average error rate " << format_number(r.average_error_rate())
        << ", erasures " << r.erasures() << ", agreement " << r.agreement << "/"
        << r.decoded() << "\n";
    all_agree = all_agree && r.decoders_agree();
  }
  s.write("simulate.csv", csv.str());
  if (!all_agree)
    throw DecoderDisagreement(
        "geometric and Bayes decoders disagreed; this contradicts the "
        "distance-posterior identity");
}

void cmd_distances(const Session& s, std::ostream& out) {
  const Channel& channel = s.spec.channel;
  const bool discrete = std::holds_alternative<DiscreteChannel>(channel);
  const Estimator deterministic =
      discrete ? Estimator{ExactEstimator{}} : Estimator{QuadratureEstimator{s.config.points}};
  const Estimator mc = MonteCarloEstimator{s.config.samples, s.config.seed};

  std::vector<Estimator> estimators;
  const std::string& m = s.config.method;
  if (m == "auto") estimators = {deterministic};
  else if (m == "exact") estimators = {ExactEstimator{}};
  else if (m == "mc") estimators = {mc};
  else if (m == "quadrature") estimators = {QuadratureEstimator{s.config.points}};
  else if (m == "both") estimators = {deterministic, mc};
  else throw UsageError("unknown --method '" + m + "'");

  std::vector<SymbolDistanceTable> tables;
  for (const auto& e : estimators)
    tables.push_back(symbol_distance_table(channel, s.spec.prior, e));

  std::ostringstream ds;
  ds << "i,j,ds,method,samples_or_points,seed,stderr\n";
  for (const auto& t : tables) {
    const std::string seed = t.info.seed ? std::to_string(*t.info.seed) : "";
    for (std::size_t i = 0; i < t.n; ++i)
      for (std::size_t j = 0; j < t.n; ++j)
        ds << i + 1 << "," << j + 1 << "," << format_number(t.at(i, j)) << ","
           << t.info.method << "," << t.info.samples_or_points << "," << seed << ","
           << format_number(t.error_at(i, j)) << "\n";
    out << "d_s (" << t.info.method << "):\n";
    for (std::size_t i = 0; i < t.n; ++i) {
      out << "  " << symbol_name(i) << ":";
      for (std::size_t j = 0; j < t.n; ++j) out << " " << format_number(t.at(i, j));
      out << "\n";
    }
    for (const auto& [i, j] : self_distance_violations(t))
      out << "  note: d_s(" << symbol_name(i) << "," << symbol_name(i) << ") exceeds d_s("
          << symbol_name(i) << "," << symbol_name(j) << ")\n";
  }
  s.write("ds.csv", ds.str());

  if (tables.size() == 2) {
    double worst = 0.0;
    for (std::size_t k = 0; k < tables[0].values.size(); ++k) {
      const double se = tables[1].standard_errors[k];
      if (se > 0)
        worst = std::max(worst, std::abs(tables[0].values[k] - tables[1].values[k]) / se);
    }
    out << "largest " << tables[0].info.method << " vs monte_carlo gap: "
        << format_number(worst) << " standard errors"
        << (worst <= 4.0 ? " (agree within 4)" : " (EXCEEDS 4)") << "\n";
  }

  if (s.config.codebook.empty()) return;
  const auto codebook = load_codebook(s.config.codebook, symbol_count(channel));
  std::ostringstream dv;
  dv << "c1,c2,dv,method,samples_or_points,seed,stderr,min_pair\n";
  for (const auto& e : estimators) {
    const CodebookTable t = codebook_table(channel, s.spec.prior, codebook, e);
    const std::string seed = t.info.seed ? std::to_string(*t.info.seed) : "";
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = 0; b < t.size(); ++b)
        dv << codeword_text(t.codebook[a]) << "," << codeword_text(t.codebook[b]) << ","
           << format_number(t.at(a, b)) << "," << t.info.method << ","
           << t.info.samples_or_points << "," << seed << ","
           << format_number(t.standard_errors[a * t.size() + b]) << ","
           << ((a == t.min_pair.first && b == t.min_pair.second) ? 1 : 0) << "\n";
    out << "minimum d_v (" << t.info.method << "): " << format_number(t.min_value)
        << " between [" << codeword_text(t.codebook[t.min_pair.first]) << "] and ["
        << codeword_text(t.codebook[t.min_pair.second]) << "]\n";
  }
  s.write("dv.csv", dv.str());
}

std::vector<double> parse_grid(const std::string& text) {
  double lo = 0, hi = 0;
  unsigned long count = 0;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count == 0 ||
      !(in >> std::ws).eof() || hi < lo)
    throw UsageError("--y-grid expects LO:HI:COUNT, got '" + text + "'");
  return linear_grid(lo, hi, count);
}

void cmd_figure(const Session& s, std::ostream& out) {
  const Channel& channel = s.spec.channel;
  FigureDocument doc;
  std::string stem;
  if (const auto* d = std::get_if<DiscreteChannel>(&channel)) {
    doc = figure_discrete(*d, s.spec.prior);
    stem = "figure_discrete";
  } else {
    doc = figure_locus(channel, s.spec.prior, parse_grid(s.config.y_grid));
    stem = "figure_locus";
  }
  s.write(stem + ".csv", doc.csv());
  out << "csv -> " << (s.out / (stem + ".csv")).string() << "\n";
  if (doc.has_svg()) {
    s.write(stem + ".svg", doc.svg(s.provenance()), false);
    out << "svg -> " << (s.out / (stem + ".svg")).string() << "\n";
  } else {
    out << "svg skipped: only drawn for three-symbol alphabets\n";
  }
  out << doc.checks.summary();
  if (!doc.checks.passed()) throw FigureInvariantError("figure invariant check failed");
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--spec", c.spec_path, "Channel spec JSON file")->required();
  sub->add_option("--seed", c.seed, "Root seed (default 0x5EED)");
  sub->add_option("--out", c.out_dir, "Output directory");
  sub->add_option("--prior", c.prior, "Prior override, comma-separated");
  sub->add_option("--threads", c.threads, "OpenMP worker count");
}

void add_observations(CLI::App* sub, RunConfig& c) {
  sub->add_option("--obs", c.observations, "Observations (labels or reals)")
      ->allow_extra_args()
      ->delimiter(',');
  sub->add_flag("--stdin", c.read_stdin, "Read observations from stdin, one per line");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Euclidean geometric representation of detection problems"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);
  RunConfig c;

  auto* embed = app.add_subcommand("embed", "Symbol and observation embeddings");
  add_common(embed, c);
  add_observations(embed, c);

  auto* decode = app.add_subcommand("decode", "MAP decisions by nearest vertex");
  add_common(decode, c);
  add_observations(decode, c);
  decode->add_option("--repetition", c.repetition,
                     "Decode M repeated-symbol observations jointly");
  decode->add_flag("--sequence", c.sequence, "Decode the observations as one codeword");

  auto* simulate = app.add_subcommand("simulate", "Error-rate simulation, dual decoder");
  add_common(simulate, c);
  simulate->add_option("--repetitions", c.repetitions, "Channel uses per trial")
      ->delimiter(',');
  simulate->add_option("--trials", c.trials, "Trials per configuration")
      ->check(CLI::PositiveNumber);

  auto* distances = app.add_subcommand("distances", "d_s and d_v tables");
  add_common(distances, c);
  distances->add_option("--method", c.method, "auto|exact|mc|quadrature|both");
  distances->add_option("--samples", c.samples, "Monte Carlo samples");
  distances->add_option("--points", c.points, "Quadrature points");
  distances->add_option("--codebook", c.codebook, "Codebook file");

  auto* figure = app.add_subcommand("figure", "SVG/CSV figures of the plane");
  add_common(figure, c);
  figure->add_option("--y-grid", c.y_grid, "LO:HI:COUNT for locus figures");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (embed->parsed()) cmd_embed(open_session(c, "embed"), in, out);
    else if (decode->parsed()) cmd_decode(open_session(c, "decode"), in, out);
    else if (simulate->parsed()) cmd_simulate(open_session(c, "simulate"), out);
    else if (distances->parsed()) cmd_distances(open_session(c, "distances"), out);
    else if (figure->parsed()) cmd_figure(open_session(c, "figure"), out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const EnumerationCapError& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const SpecError& e) {
    err << "spec error: " << e.what() << "\n";
    return spec;
  } catch (const ErasureError& e) {
    err << "erasure: " << e.what()
        << "\n(the geometric representation needs every posterior to be strictly "
           "positive; observations that rule a symbol out cannot be embedded)\n";
    return erasure;
  } catch (const DecoderDisagreement& e) {
    err << "error: " << e.what() << "\n";
    return disagreement;
  } catch (const EstimatorError& e) {
    err << "estimator error: " << e.what() << "\n";
    return estimator;
  } catch (const FigureInvariantError& e) {
    err << "error: " << e.what() << "\n";
    return figure_invariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  }
  return ok;
}

}  // namespace geomdet::cli
