/* Copyright 2026 The dwstft Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "dwstft/netspec.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "dwstft/error.hpp"

namespace dwstft::net {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_uint(const std::string& key, const std::string& value,
                         int line) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw SpecError("config line " + std::to_string(line) + ": '" + key +
                    "' expects a non-negative integer, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value, int line) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw SpecError("config line " + std::to_string(line) + ": '" + key +
                  "' expects true/false, got '" + value + "'");
}

std::vector<std::uint64_t> parse_list(const std::string& key,
                                      const std::string& value, int line,
                                      const std::string& separators) {
  std::vector<std::uint64_t> out;
  std::string item;
  for (char ch : value + separators.front()) {
    if (separators.find(ch) != std::string::npos) {
      item = trim(item);
      if (!item.empty()) out.push_back(parse_uint(key, item, line));
      item.clear();
    } else {
      item += ch;
    }
  }
  return out;
}

}  // namespace

const char* to_string(BlockKind kind) {
  return kind == BlockKind::kPlain ? "block1" : "block2";
}

void BlockSpec::validate() const {
  if (in_channels == 0 || bottleneck == 0 || out_channels == 0) {
    throw SpecError("block channels must be positive");
  }
  if (bottleneck >= in_channels) {
    throw SpecError("bottleneck b=" + std::to_string(bottleneck) +
                    " must be smaller than input channels c=" +
                    std::to_string(in_channels));
  }
  if (out_channels <= bottleneck) {
    throw SpecError("expansion f=" + std::to_string(out_channels) +
                    " must exceed bottleneck b=" + std::to_string(bottleneck));
  }
  if (kind == BlockKind::kResidual && in_channels != out_channels) {
    throw SpecError("residual block needs c == f, got c=" +
                    std::to_string(in_channels) + " f=" +
                    std::to_string(out_channels));
  }
  if (branch_sizes.empty()) throw SpecError("block needs at least one branch");
  for (int n : branch_sizes) {
    if (n < 3 || n % 2 == 0) {
      throw SpecError("STFT branch size must be odd and >= 3, got " +
                      std::to_string(n));
    }
  }
}

std::vector<BlockSpec> NetSpec::blocks() const {
  std::vector<BlockSpec> out;
  if (stages.empty()) return out;
  std::size_t channels = stages.front().out_channels;  // after the stem
  for (const StageSpec& stage : stages) {
    for (std::size_t j = 0; j < stage.blocks; ++j) {
      BlockSpec b;
      const bool first_overall = out.empty();
      const bool widens = j == 0 && channels != stage.out_channels;
      b.kind = (first_overall || widens) ? BlockKind::kPlain : BlockKind::kResidual;
      b.in_channels = channels;
      b.bottleneck = stage.bottleneck;
      b.out_channels = stage.out_channels;
      b.branch_sizes = branch_sizes;
      out.push_back(b);
      channels = stage.out_channels;
    }
  }
  return out;
}

std::size_t NetSpec::total_blocks() const {
  std::size_t n = 0;
  for (const StageSpec& s : stages) n += s.blocks;
  return n;
}

std::size_t NetSpec::final_channels() const {
  return stages.empty() ? in_channels : stages.back().out_channels;
}

void NetSpec::validate() const {
  if (classes == 0) throw SpecError("classes must be >= 1");
  if (in_channels == 0 || height == 0 || width == 0) {
    throw SpecError("input shape must be positive");
  }
  std::size_t h = height, w = width;
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const StageSpec& s = stages[i];
    if (s.blocks == 0) {
      throw SpecError("stage " + std::to_string(i + 1) + " has no blocks");
    }
    if (s.pool) {
      if (h % 2 != 0 || w % 2 != 0) {
        throw SpecError("stage " + std::to_string(i + 1) +
                        " pools an odd spatial size " + std::to_string(h) +
                        "x" + std::to_string(w));
      }
      h /= 2;
      w /= 2;
    }
  }
  for (const BlockSpec& b : blocks()) b.validate();
}

NetSpec reference_netspec(std::size_t bottleneck, std::size_t width,
                      std::size_t classes) {
  NetSpec spec;
  spec.classes = classes;
  for (int i = 0; i < 4; ++i) {
    spec.stages.push_back({4, bottleneck, width, i < 3});
  }
  return spec;
}

NetSpec parse_netspec(std::istream& in) {
  NetSpec spec;
  std::map<std::uint64_t, StageSpec> stages;
  std::map<std::uint64_t, int> seen_keys;
  std::string raw;
  int line = 0;
  bool in_stage = false;
  std::uint64_t stage_id = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = trim(raw.substr(0, raw.find('#')));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.rfind("[stage.", 0) != 0) {
        throw SpecError("config line " + std::to_string(line) +
                        ": expected a [stage.N] section, got " + text);
      }
      stage_id = parse_uint("section", text.substr(7, text.size() - 8), line);
      if (stages.count(stage_id)) {
        throw SpecError("config line " + std::to_string(line) +
                        ": duplicate section " + text);
      }
      stages[stage_id] = StageSpec{};
      seen_keys[stage_id] = 0;
      in_stage = true;
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw SpecError("config line " + std::to_string(line) +
                      ": expected key = value");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (in_stage) {
      StageSpec& s = stages[stage_id];
      if (key == "blocks") {
        s.blocks = parse_uint(key, value, line);
      } else if (key == "b") {
        s.bottleneck = parse_uint(key, value, line);
        seen_keys[stage_id] |= 1;
      } else if (key == "f") {
        s.out_channels = parse_uint(key, value, line);
        seen_keys[stage_id] |= 2;
      } else if (key == "pool") {
        s.pool = parse_bool(key, value, line);
      } else {
        throw SpecError("config line " + std::to_string(line) +
                        ": unknown stage key '" + key + "'");
      }
    } else if (key == "classes") {
      spec.classes = parse_uint(key, value, line);
    } else if (key == "seed") {
      spec.seed = parse_uint(key, value, line);
    } else if (key == "input") {
      const auto dims = parse_list(key, value, line, "x,");
      if (dims.size() != 3) {
        throw SpecError("config line " + std::to_string(line) +
                        ": input expects CxHxW, got '" + value + "'");
      }
      spec.in_channels = dims[0];
      spec.height = dims[1];
      spec.width = dims[2];
    } else if (key == "branches") {
      spec.branch_sizes.clear();
      for (auto n : parse_list(key, value, line, ",")) {
        spec.branch_sizes.push_back(static_cast<int>(n));
      }
    } else {
      throw SpecError("config line " + std::to_string(line) +
                      ": unknown key '" + key + "'");
    }
  }
  for (const auto& [id, s] : stages) {
    if (seen_keys[id] != 3) {
      throw SpecError("stage." + std::to_string(id) + " needs both b and f");
    }
    spec.stages.push_back(s);
  }
  spec.validate();
  return spec;
}

NetSpec load_netspec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  return parse_netspec(in);
}

std::string format_netspec(const NetSpec& spec) {
  std::ostringstream os;
  os << "classes = " << spec.classes << "\n"
     << "input = " << spec.in_channels << "x" << spec.height << "x"
     << spec.width << "\n"
     << "seed = " << spec.seed << "\n"
     << "branches = ";
  for (std::size_t i = 0; i < spec.branch_sizes.size(); ++i) {
    os << (i ? "," : "") << spec.branch_sizes[i];
  }
  os << "\n";
  for (std::size_t i = 0; i < spec.stages.size(); ++i) {
    const StageSpec& s = spec.stages[i];
    os << "\n[stage." << i + 1 << "]\n"
       << "blocks = " << s.blocks << "\n"
       << "b = " << s.bottleneck << "\n"
       << "f = " << s.out_channels << "\n"
       << "pool = " << (s.pool ? "true" : "false") << "\n";
  }
  return os.str();
}

}  // namespace dwstft::net
