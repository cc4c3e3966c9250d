#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "pngtoda/errors.hpp"

namespace png::cli {

using nlohmann::json;

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

// Line of the first `"key" :` in the text; 0 if absent.
int line_of_key(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  for (std::size_t pos = text.find(quoted); pos != std::string::npos;
       pos = text.find(quoted, pos + 1)) {
    std::size_t k = pos + quoted.size();
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
    if (k < text.size() && text[k] == ':') return line_of_offset(text, pos);
  }
  return 0;
}

Height parse_height_value(const json& v) {
  if (v.is_number_integer()) return Height(v.get<long>());
  if (v.is_string() && (v == "-inf" || v == "neg_inf")) return Height::neg_inf();
  if (v.is_null()) return Height::neg_inf();
  throw ConfigError("", "height values must be integers or \"-inf\"");
}

std::vector<double> doubles_of(const json& v) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError("", "expected a number or an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError("", "expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<long> longs_of(const json& v) {
  if (v.is_number_integer()) return {v.get<long>()};
  if (!v.is_array()) throw ConfigError("", "expected an integer or an array of integers");
  std::vector<long> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) throw ConfigError("", "expected integers");
    out.push_back(e.get<long>());
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

}  // namespace

std::string RunConfig::where(const std::string& key) const {
  const auto it = lines.find(key);
  if (it != lines.end()) return source + ":" + std::to_string(it->second) + ": " + key;
  std::string flag = key;
  std::replace(flag.begin(), flag.end(), '_', '-');
  return "--" + flag;
}

HeightFunction RunConfig::height() const {
  try {
    return parse_height(initial);
  } catch (const std::exception& e) {
    throw ConfigError(where("initial"), e.what());
  }
}

std::vector<std::vector<long>> RunConfig::r_vectors() const {
  if (!rs.empty()) return {rs};
  if (!r_range) return {};
  std::vector<std::vector<long>> out{{}};
  for (std::size_t k = 0; k < xs.size(); ++k) {
    std::vector<std::vector<long>> next;
    for (const auto& prefix : out)
      for (long r = r_range->first; r <= r_range->second; ++r) {
        auto v = prefix;
        v.push_back(r);
        next.push_back(std::move(v));
      }
    out.swap(next);
  }
  return out;
}

std::vector<long> RunConfig::levels() const {
  if (!rs.empty()) return rs;
  std::vector<long> out;
  if (r_range)
    for (long r = r_range->first; r <= r_range->second; ++r) out.push_back(r);
  return out;
}

HeightFunction parse_height(const std::string& spec) {
  const std::string s = trim(spec);
  if (s.empty() || s.front() != '{') return HeightFunction::from_preset(s);
  json j;
  try {
    j = json::parse(s);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("initial data is not valid JSON: ") + e.what());
  }
  static const std::set<std::string> known{"left_value", "pieces", "spikes"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("", "unknown initial-data key '" + k + "'");
  const Height left = j.contains("left_value") ? parse_height_value(j["left_value"])
                                               : Height::neg_inf();
  std::vector<Breakpoint> pieces;
  std::vector<Spike> spikes;
  for (const auto& p : j.value("pieces", json::array())) {
    if (!p.contains("at") || !p.contains("value") || !p["at"].is_number())
      throw ConfigError("", "every piece needs numeric 'at' and a 'value'");
    pieces.push_back({p["at"].get<double>(), parse_height_value(p["value"])});
  }
  for (const auto& p : j.value("spikes", json::array())) {
    if (!p.contains("at") || !p.contains("value") || !p["at"].is_number())
      throw ConfigError("", "every spike needs numeric 'at' and a 'value'");
    spikes.push_back({p["at"].get<double>(), parse_height_value(p["value"])});
  }
  return HeightFunction(left, std::move(pieces), std::move(spikes));
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig c;
  c.source = source;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ":" + std::to_string(line_of_offset(text, e.byte)),
                      "malformed JSON");
  }
  if (!j.is_object()) throw ConfigError(source + ":1", "config must be a JSON object");
  for (const auto& [k, v] : j.items()) c.lines[k] = line_of_key(text, k);

  for (const auto& [key, v] : j.items()) {
    try {
      if (key == "command") c.command = v.get<std::string>();
      else if (key == "initial") c.initial = v.is_string() ? v.get<std::string>() : v.dump();
      else if (key == "t") c.ts = doubles_of(v);
      else if (key == "xs") c.xs = doubles_of(v);
      else if (key == "rs") c.rs = longs_of(v);
      else if (key == "r_range") {
        if (v.is_string()) {
          c.r_range = parse_range(v.get<std::string>());
        } else {
          const auto r = longs_of(v);
          if (r.size() != 2) throw ConfigError("", "r_range needs [lo, hi]");
          c.r_range = std::pair{r[0], r[1]};
        }
      }
      else if (key == "s") c.ss = doubles_of(v);
      else if (key == "kind") c.kind = v.get<std::string>();
      else if (key == "sampler") c.sampler = v.get<std::string>();
      else if (key == "samples") c.samples = v.get<long>();
      else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "step") c.step = v.get<double>();
      else if (key == "tolerance") c.tolerance = v.get<double>();
      else if (key == "check_tolerance") c.check_tolerance = v.get<double>();
      else if (key == "block_size") c.block_size = v.get<long>();
      else if (key == "buffer") c.buffer = v.get<long>();
      else if (key == "format") c.format = v.get<std::string>();
      else if (key == "output") c.output = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<int>();
      else if (key == "allow_unconverged") c.allow_unconverged = v.get<bool>();
      else if (key == "check") c.check = v.get<bool>();
      else throw ConfigError("", "unknown key");
    } catch (const ConfigError& e) {
      throw ConfigError(c.where(key), e.what());
    } catch (const json::exception&) {
      throw ConfigError(c.where(key), "value has the wrong type");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

std::vector<double> parse_doubles(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const std::string s = trim(item);
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw ConfigError("", "'" + s + "' is not a number");
    out.push_back(v);
  }
  return out;
}

std::vector<long> parse_longs(const std::string& csv) {
  std::vector<long> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    std::size_t used = 0;
    const std::string s = trim(item);
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (s.empty() || used != s.size()) throw ConfigError("", "'" + s + "' is not an integer");
    out.push_back(v);
  }
  return out;
}

std::pair<long, long> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("", "range must look like lo:hi");
  const auto lo = parse_longs(text.substr(0, colon));
  const auto hi = parse_longs(text.substr(colon + 1));
  if (lo.size() != 1 || hi.size() != 1 || lo[0] > hi[0])
    throw ConfigError("", "range must look like lo:hi with lo <= hi");
  return {lo[0], hi[0]};
}

void validate(const RunConfig& c) {
  static const std::set<std::string> commands{"cdf",       "simulate",    "compare", "toda-check",
                                              "painleve",  "closed-form", "initdata"};
  if (!commands.count(c.command)) throw ConfigError(c.where("command"), "unknown command");
  auto finite = [](double v) { return std::isfinite(v); };
  if (c.ts.empty() || !std::all_of(c.ts.begin(), c.ts.end(), [&](double t) { return finite(t) && t >= 0; }))
    throw ConfigError(c.where("t"), "times must be finite and >= 0");
  if (c.xs.empty() || !std::all_of(c.xs.begin(), c.xs.end(), finite))
    throw ConfigError(c.where("xs"), "need at least one finite point");
  for (std::size_t k = 1; k < c.xs.size(); ++k)
    if (!(c.xs[k - 1] < c.xs[k])) throw ConfigError(c.where("xs"), "points must be strictly increasing");
  if (!c.rs.empty() && c.rs.size() != c.xs.size())
    throw ConfigError(c.where("rs"), "need one level per point");
  if (!c.rs.empty() && c.r_range)
    throw ConfigError(c.where("r_range"), "give either rs or r_range, not both");
  if (c.ss.empty() || !std::all_of(c.ss.begin(), c.ss.end(), [&](double s) { return finite(s) && s > 0; }))
    throw ConfigError(c.where("s"), "s values must be positive");
  if (c.samples < 1) throw ConfigError(c.where("samples"), "must be positive");
  if (!(c.step > 0) || !finite(c.step)) throw ConfigError(c.where("step"), "must be positive");
  if (!(c.tolerance > 0)) throw ConfigError(c.where("tolerance"), "must be positive");
  if (c.check_tolerance < 0) throw ConfigError(c.where("check_tolerance"), "must be >= 0");
  if (c.block_size < 4) throw ConfigError(c.where("block_size"), "must be at least 4");
  if (c.buffer < 0) throw ConfigError(c.where("buffer"), "must be >= 0");
  if (c.format != "csv" && c.format != "jsonl")
    throw ConfigError(c.where("format"), "must be csv or jsonl");
  if (c.sampler != "event" && c.sampler != "lastpassage" && c.sampler != "both")
    throw ConfigError(c.where("sampler"), "must be event, lastpassage or both");
  if (c.threads < 0) throw ConfigError(c.where("threads"), "must be >= 0");
  const bool needs_r = c.command != "simulate";
  if (needs_r && c.rs.empty() && !c.r_range)
    throw ConfigError(c.where("rs"), "this command needs rs or r_range");
  if (c.command == "toda-check") {
    static const std::set<std::string> kinds{"scalar", "1d", "nonabelian", "kernel-eta",
                                             "kernel-zeta", "ratio"};
    if (!kinds.count(c.kind)) throw ConfigError(c.where("kind"), "unknown toda-check kind");
  }
  if (c.command == "painleve") {
    for (long r : c.levels())
      if (r < 1) throw ConfigError(c.where(c.rs.empty() ? "r_range" : "rs"), "painleve needs r >= 1");
  }
  if (c.command == "closed-form" && c.kind != "narrow-wedge" && c.kind != "flat")
    throw ConfigError(c.where("kind"), "closed-form kind must be narrow-wedge or flat");
  if (c.command != "painleve" && c.command != "closed-form" &&
      !(c.command == "toda-check" && c.kind == "1d"))
    c.height();
}

}  // namespace png::cli
