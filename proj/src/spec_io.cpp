#include "geomdet/spec_io.hpp"

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "geomdet/error.hpp"

namespace geomdet {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw SpecError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string symbol_label(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw SpecError("symbols must be strings or numbers");
}

std::vector<double> numbers(const json& v, const char* what) {
  if (!v.is_array()) throw SpecError(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw SpecError(std::string(what) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

double positive_number(const json& doc, const char* key) {
  const json& v = require(doc, key);
  if (!v.is_number()) throw SpecError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ChannelSpec parse_channel_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("malformed channel spec: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("channel spec must be a JSON object");

  const std::string type = require(doc, "type").get<std::string>();
  const json& symbols = require(doc, "symbols");
  if (!symbols.is_array()) throw SpecError("'symbols' must be an array");

  std::vector<std::string> labels;
  for (const auto& s : symbols) labels.push_back(symbol_label(s));

  std::optional<Channel> channel;
  try {
    Alphabet alphabet(labels);
    if (type == "discrete") {
      std::vector<std::string> observations;
      for (const auto& o : require(doc, "observations")) observations.push_back(symbol_label(o));
      const json& rows = require(doc, "transition");
      if (!rows.is_array() || rows.size() != alphabet.size())
        throw SpecError("'transition' needs one row per symbol");
      std::vector<double> transition;
      for (const auto& row : rows) {
        const auto r = numbers(row, "transition rows");
        if (r.size() != observations.size())
          throw SpecError("transition row length does not match 'observations'");
        transition.insert(transition.end(), r.begin(), r.end());
      }
      channel = DiscreteChannel{std::move(alphabet), std::move(observations),
                                std::move(transition)};
    } else if (type == "awgn" || type == "laplace") {
      const auto values = numbers(symbols, "symbols of an additive channel");
      if (type == "awgn")
        channel = AwgnChannel{std::move(alphabet), values, positive_number(doc, "sigma2")};
      else
        channel = LaplaceChannel{std::move(alphabet), values, positive_number(doc, "lambda")};
    } else {
      throw SpecError("unknown channel type '" + type + "'");
    }
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed channel spec: ") + e.what());
  }

  const auto violations = validate(*channel);
  if (!violations.empty()) {
    std::string msg = "channel spec is invalid:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw SpecError(msg);
  }

  const std::size_t n = symbol_count(*channel);
  std::optional<Prior> prior;
  try {
    prior = doc.contains("prior") ? Prior(numbers(doc.at("prior"), "'prior'"))
                                  : Prior::uniform(n);
  } catch (const std::invalid_argument& e) {
    throw SpecError(e.what());
  }
  if (prior->size() != n) throw SpecError("prior length does not match 'symbols'");
  return ChannelSpec{std::move(*channel), std::move(*prior), content_digest(json_text)};
}

ChannelSpec load_channel_spec(const std::filesystem::path& path) {
  return parse_channel_spec(read_file(path));
}

std::vector<Codeword> parse_codebook(const std::string& text, std::size_t n) {
  std::vector<Codeword> out;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    Codeword c;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used])))
        ++used;
      if (used != field.size() || v < 1 || static_cast<std::size_t>(v) > n)
        throw SpecError("codebook line " + std::to_string(line_no) +
                        ": expected indices in 1.." + std::to_string(n));
      c.push_back(static_cast<std::size_t>(v - 1));
    }
    if (!out.empty() && c.size() != out.front().size())
      throw SpecError("codebook line " + std::to_string(line_no) +
                      ": codewords must share one length");
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Codeword> load_codebook(const std::filesystem::path& path, std::size_t n) {
  return parse_codebook(read_file(path), n);
}

}  // namespace geomdet
