#include "tlgpinn/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace tlgpinn::config {

namespace {

using pipeline::ConfigError;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T number(const std::string& value, const std::string& key, int line) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError(fmt::format("line {}: bad value '{}' for {}", line, value, key));
  return out;
}

bool boolean(const std::string& value, const std::string& key, int line) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(fmt::format("line {}: bad value '{}' for {}", line, value, key));
}

void set_stage(optim::LbfgsConfig& s, const std::string& key, const std::string& value, int line) {
  if (key == "max_iter") s.max_iter = number<std::size_t>(value, key, line);
  else if (key == "memory") s.memory = number<std::size_t>(value, key, line);
  else if (key == "grad_tol") s.grad_tol = number<double>(value, key, line);
  else if (key == "ftol") s.ftol = number<double>(value, key, line);
  else if (key == "c1") s.wolfe_c1 = number<double>(value, key, line);
  else if (key == "c2") s.wolfe_c2 = number<double>(value, key, line);
  else if (key == "max_linesearch") s.max_linesearch = number<std::size_t>(value, key, line);
  else throw ConfigError(fmt::format("line {}: unknown stage key '{}'", line, key));
}

void set_run(pipeline::RunConfig& c, const std::string& key, const std::string& value, int line) {
  if (key == "case") c.case_id = value;
  else if (key == "method") {
    try {
      c.method = pipeline::parse_method(value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line, e.what()));
    }
  } else if (key == "seed") c.sampling_seed = c.init_seed = number<std::uint64_t>(value, key, line);
  else if (key == "sampling_seed") c.sampling_seed = number<std::uint64_t>(value, key, line);
  else if (key == "init_seed") c.init_seed = number<std::uint64_t>(value, key, line);
  else if (key == "noise") c.noise = number<double>(value, key, line);
  else if (key == "nf") c.counts.collocation = number<std::size_t>(value, key, line);
  else if (key == "n_boundary") c.counts.boundary = number<std::size_t>(value, key, line);
  else if (key == "n_interior") c.counts.interior = number<std::size_t>(value, key, line);
  else if (key == "branch_depth") c.branch_depth = number<int>(value, key, line);
  else if (key == "branch_width") c.branch_width = number<int>(value, key, line);
  else if (key == "chunk") c.chunk = number<std::size_t>(value, key, line);
  else if (key == "input_scaling") c.input_scaling = boolean(value, key, line);
  else if (key == "workers") c.workers = number<int>(value, key, line);
  else if (key == "out") c.output_dir = value;
  else if (key == "full") {
    if (boolean(value, key, line)) c.make_full_scale();
  } else throw ConfigError(fmt::format("line {}: unknown key '{}'", line, key));
}

}  // namespace

pipeline::RunConfig parse(std::istream& in, pipeline::RunConfig base) {
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto text = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') throw ConfigError(fmt::format("line {}: unterminated section header", line));
      section = trim(std::string_view(text).substr(1, text.size() - 2));
      if (section != "stage1" && section != "stage2")
        throw ConfigError(fmt::format("line {}: unknown section [{}]", line, section));
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError(fmt::format("line {}: expected key = value", line));
    const auto key = trim(std::string_view(text).substr(0, eq));
    const auto value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(fmt::format("line {}: empty key", line));
    if (section.empty()) set_run(base, key, value, line);
    else set_stage(section == "stage1" ? base.stage1 : base.stage2, key, value, line);
  }
  return base;
}

pipeline::RunConfig load(const std::filesystem::path& path, pipeline::RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot read config file {}", path.string()));
  return parse(in, std::move(base));
}

std::string render(const pipeline::RunConfig& c) {
  std::string out;
  auto line = [&](std::string_view k, const auto& v) { out += fmt::format("{} = {}\n", k, v); };
  line("case", c.case_id);
  line("method", pipeline::to_string(c.method));
  line("sampling_seed", c.sampling_seed);
  line("init_seed", c.init_seed);
  line("noise", fmt::format("{:.17g}", c.noise));
  line("n_boundary", c.counts.boundary);
  line("n_interior", c.counts.interior);
  line("nf", c.counts.collocation);
  line("chunk", c.chunk);
  if (c.input_scaling) line("input_scaling", "true");
  if (c.branch_depth) line("branch_depth", *c.branch_depth);
  if (c.branch_width) line("branch_width", *c.branch_width);
  for (int k = 1; k <= 2; ++k) {
    const auto& s = k == 1 ? c.stage1 : c.stage2;
    out += fmt::format("\n[stage{}]\n", k);
    line("max_iter", s.max_iter);
    line("memory", s.memory);
    line("grad_tol", fmt::format("{:.17g}", s.grad_tol));
    line("ftol", fmt::format("{:.17g}", s.ftol));
    line("c1", fmt::format("{:.17g}", s.wolfe_c1));
    line("c2", fmt::format("{:.17g}", s.wolfe_c2));
    line("max_linesearch", s.max_linesearch);
  }
  return out;
}

}  // namespace tlgpinn::config
