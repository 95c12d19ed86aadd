#include "core/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bpo {

std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_double_12(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

struct Tokenizer {
  std::vector<std::vector<std::string>> lines;

  explicit Tokenizer(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) lines.push_back(std::move(tokens));
    }
  }
};

int64_t to_int(const std::string& s) {
  int64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("expected integer, got '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::runtime_error("expected number, got '" + s + "'");
  return v;
}

void expect_arity(const std::vector<std::string>& tokens, size_t n) {
  if (tokens.size() != n)
    throw std::runtime_error("malformed '" + tokens[0] + "' line: expected " + std::to_string(n - 1) +
                             " fields");
}

}  // namespace

std::string instance_to_text(const CampaignInstance& inst) {
  std::ostringstream out;
  out << "bpo-instance v1\n";
  out << "N " << inst.n_users() << "\n";
  out << "advertiser " << inst.advertiser << "\n";
  out << "budget " << format_double(inst.budget) << "\n";
  for (int32_t u = 0; u < inst.n_users(); ++u)
    out << "user " << u << " " << format_double(inst.rates[u]) << " "
        << format_double(inst.costs[u]) << " " << format_double(inst.caps[u]) << "\n";
  for (const auto& e : inst.impressions.entries())
    out << "imp " << e.source << " " << e.viewer << " " << format_double(e.value) << "\n";
  return out.str();
}

void write_instance(const CampaignInstance& inst, const std::string& path) {
  write_text_file(path, instance_to_text(inst));
}

CampaignInstance read_instance_text(const std::string& text) {
  Tokenizer tok(text);
  if (tok.lines.empty() || tok.lines[0].size() != 2 || tok.lines[0][0] != "bpo-instance" ||
      tok.lines[0][1] != "v1")
    throw std::runtime_error("missing 'bpo-instance v1' header");

  int32_t n = -1;
  CampaignInstance inst;
  std::vector<ImpressionEntry> entries;
  for (size_t i = 1; i < tok.lines.size(); ++i) {
    const auto& t = tok.lines[i];
    if (t[0] == "N") {
      expect_arity(t, 2);
      n = static_cast<int32_t>(to_int(t[1]));
      if (n < 2) throw std::runtime_error("N must be at least 2");
      inst.rates.assign(n, 0.0);
      inst.costs.assign(n, 0.0);
      inst.caps.assign(n, 1.0);
    } else if (t[0] == "advertiser") {
      expect_arity(t, 2);
      inst.advertiser = static_cast<int32_t>(to_int(t[1]));
    } else if (t[0] == "budget") {
      expect_arity(t, 2);
      inst.budget = to_real(t[1]);
    } else if (t[0] == "user") {
      expect_arity(t, 5);
      if (n < 0) throw std::runtime_error("'user' line before 'N'");
      const auto id = to_int(t[1]);
      if (id < 0 || id >= n) throw std::runtime_error("user id out of range: " + t[1]);
      inst.rates[id] = to_real(t[2]);
      inst.costs[id] = to_real(t[3]);
      inst.caps[id] = to_real(t[4]);
    } else if (t[0] == "imp") {
      expect_arity(t, 4);
      if (n < 0) throw std::runtime_error("'imp' line before 'N'");
      const auto src = to_int(t[1]), vw = to_int(t[2]);
      if (src < 0 || src >= n || vw < 0 || vw >= n)
        throw std::runtime_error("impression entry out of range");
      entries.push_back({static_cast<int32_t>(src), static_cast<int32_t>(vw), to_real(t[3])});
    } else {
      throw std::runtime_error("unknown line '" + t[0] + "'");
    }
  }
  if (n < 0) throw std::runtime_error("missing 'N' line");
  if (inst.advertiser < 0 || inst.advertiser >= n) throw std::runtime_error("bad advertiser id");
  inst.impressions = ImpressionMatrix(n, std::move(entries));
  return inst;
}

CampaignInstance read_instance(const std::string& path) {
  return read_instance_text(read_text_file(path));
}

std::string mp_instance_to_text(const MultiPlatformInstance& mp) {
  std::ostringstream out;
  out << "bpo-mp v1\n";
  out << "L " << mp.platforms() << "\n";
  out << "Q " << mp.contents() << "\n";
  out << "N " << mp.n_users() << "\n";
  out << "advertiser " << mp.advertiser() << "\n";
  out << "budget " << format_double(mp.budget()) << "\n";
  for (int32_t l = 0; l < mp.platforms(); ++l)
    out << "sigma " << l << " " << format_double(mp.sigma(l)) << "\n";
  for (int32_t l = 0; l < mp.platforms(); ++l)
    for (int32_t q = 0; q < mp.contents(); ++q)
      out << "zeta " << l << " " << q << " " << format_double(mp.zeta(l, q)) << "\n";
  for (int32_t l = 0; l < mp.platforms(); ++l)
    for (int32_t q = 0; q < mp.contents(); ++q)
      for (int32_t u = 0; u < mp.n_users(); ++u)
        out << "user " << l << " " << q << " " << u << " " << format_double(mp.rate(l, q, u))
            << " " << format_double(mp.cost(l, q, u)) << " " << format_double(mp.cap(l, q, u))
            << "\n";
  for (const auto& e : mp.entries())
    out << "imp " << e.platform << " " << e.content << " " << e.source << " " << e.viewer << " "
        << format_double(e.value) << "\n";
  return out.str();
}

void write_mp_instance(const MultiPlatformInstance& mp, const std::string& path) {
  write_text_file(path, mp_instance_to_text(mp));
}

MultiPlatformInstance read_mp_instance_text(const std::string& text) {
  Tokenizer tok(text);
  if (tok.lines.empty() || tok.lines[0].size() != 2 || tok.lines[0][0] != "bpo-mp" ||
      tok.lines[0][1] != "v1")
    throw std::runtime_error("missing 'bpo-mp v1' header");

  int32_t L = -1, Q = -1, N = -1, advertiser = 0;
  double budget = 0.0;
  size_t i = 1;
  // header block first: the instance object needs all five values up front
  for (; i < tok.lines.size(); ++i) {
    const auto& t = tok.lines[i];
    if (t[0] == "L") { expect_arity(t, 2); L = static_cast<int32_t>(to_int(t[1])); }
    else if (t[0] == "Q") { expect_arity(t, 2); Q = static_cast<int32_t>(to_int(t[1])); }
    else if (t[0] == "N") { expect_arity(t, 2); N = static_cast<int32_t>(to_int(t[1])); }
    else if (t[0] == "advertiser") { expect_arity(t, 2); advertiser = static_cast<int32_t>(to_int(t[1])); }
    else if (t[0] == "budget") { expect_arity(t, 2); budget = to_real(t[1]); }
    else break;
  }
  if (L < 1 || Q < 1 || N < 2) throw std::runtime_error("missing or bad L/Q/N header lines");

  MultiPlatformInstance mp(L, Q, N, advertiser, budget);
  for (; i < tok.lines.size(); ++i) {
    const auto& t = tok.lines[i];
    if (t[0] == "sigma") {
      expect_arity(t, 3);
      mp.set_sigma(static_cast<int32_t>(to_int(t[1])), to_real(t[2]));
    } else if (t[0] == "zeta") {
      expect_arity(t, 4);
      mp.set_zeta(static_cast<int32_t>(to_int(t[1])), static_cast<int32_t>(to_int(t[2])),
                  to_real(t[3]));
    } else if (t[0] == "user") {
      expect_arity(t, 7);
      const auto l = static_cast<int32_t>(to_int(t[1]));
      const auto q = static_cast<int32_t>(to_int(t[2]));
      const auto u = static_cast<int32_t>(to_int(t[3]));
      mp.set_rate(l, q, u, to_real(t[4]));
      mp.set_cost(l, q, u, to_real(t[5]));
      mp.set_cap(l, q, u, to_real(t[6]));
    } else if (t[0] == "imp") {
      expect_arity(t, 6);
      mp.add_impression(static_cast<int32_t>(to_int(t[1])), static_cast<int32_t>(to_int(t[2])),
                        static_cast<int32_t>(to_int(t[3])), static_cast<int32_t>(to_int(t[4])),
                        to_real(t[5]));
    } else {
      throw std::runtime_error("unknown line '" + t[0] + "'");
    }
  }
  mp.finalize();
  return mp;
}

MultiPlatformInstance read_mp_instance(const std::string& path) {
  return read_mp_instance_text(read_text_file(path));
}

namespace {

void append_array(std::string& out, const char* key, const std::vector<double>& values) {
  out += "  \"";
  out += key;
  out += "\": [";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += format_double_12(values[i]);
  }
  out += "]";
}

}  // namespace

std::string report_to_json(const SolveReport& rep, bool with_timings) {
  std::string out = "{\n";
  out += "  \"solver\": \"" + rep.solver + "\",\n";
  out += "  \"utility\": \"" + rep.utility + "\",\n";
  out += "  \"objective\": " + format_double_12(rep.objective) + ",\n";
  out += "  \"spend\": " + format_double_12(rep.spend) + ",\n";
  out += "  \"iterations\": " + std::to_string(rep.iterations) + ",\n";
  out += "  \"termination\": \"" + rep.termination + "\",\n";
  out += "  \"runtime_ms\": " + format_double_12(with_timings ? rep.runtime_ms : 0.0) + ",\n";
  out += "  \"budget_excess\": " + format_double_12(rep.budget_excess) + ",\n";
  out += "  \"box_excess\": " + format_double_12(rep.box_excess) + ",\n";
  append_array(out, "solution", rep.solution);
  out += ",\n";
  append_array(out, "objective_trace", rep.objective_trace);
  out += ",\n";
  append_array(out, "gap_trace", rep.gap_trace);
  out += ",\n";
  append_array(out, "step_sizes", rep.step_sizes);
  out += ",\n";
  append_array(out, "iter_ms",
               with_timings ? rep.iter_ms : std::vector<double>(rep.iter_ms.size(), 0.0));
  if (!rep.platform_spend.empty()) {
    out += ",\n";
    append_array(out, "platform_spend", rep.platform_spend);
    out += ",\n";
    append_array(out, "platform_roi", rep.platform_roi);
  }
  out += "\n}\n";
  return out;
}

std::string report_to_csv(const SolveReport& rep, bool with_timings) {
  std::string out = "t,objective,gap,step_size,iter_ms\n";
  for (size_t t = 0; t < rep.objective_trace.size(); ++t) {
    out += std::to_string(t);
    out += ",";
    out += format_double_12(rep.objective_trace[t]);
    out += ",";
    if (t < rep.gap_trace.size()) out += format_double_12(rep.gap_trace[t]);
    out += ",";
    if (t < rep.step_sizes.size()) out += format_double_12(rep.step_sizes[t]);
    out += ",";
    if (t < rep.iter_ms.size()) out += format_double_12(with_timings ? rep.iter_ms[t] : 0.0);
    out += "\n";
  }
  return out;
}

SolveReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SolveReport rep;
  rep.solver = j.at("solver").get<std::string>();
  rep.utility = j.at("utility").get<std::string>();
  rep.objective = j.at("objective").get<double>();
  rep.spend = j.at("spend").get<double>();
  rep.iterations = j.at("iterations").get<int64_t>();
  rep.termination = j.at("termination").get<std::string>();
  rep.runtime_ms = j.at("runtime_ms").get<double>();
  rep.budget_excess = j.at("budget_excess").get<double>();
  rep.box_excess = j.at("box_excess").get<double>();
  rep.solution = j.at("solution").get<std::vector<double>>();
  rep.objective_trace = j.at("objective_trace").get<std::vector<double>>();
  rep.gap_trace = j.at("gap_trace").get<std::vector<double>>();
  rep.step_sizes = j.at("step_sizes").get<std::vector<double>>();
  rep.iter_ms = j.at("iter_ms").get<std::vector<double>>();
  if (j.contains("platform_spend")) {
    rep.platform_spend = j.at("platform_spend").get<std::vector<double>>();
    rep.platform_roi = j.at("platform_roi").get<std::vector<double>>();
  }
  return rep;
}

}  // namespace bpo
