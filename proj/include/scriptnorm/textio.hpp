// Copyright 2026 The scriptnorm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace scriptnorm {

// Reads all lines of a UTF-8 text file; '\n' separated, a trailing '\r' is
// stripped so CRLF inputs behave. Throws Error if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

void write_lines(const std::string& path, const std::vector<std::string>& lines);
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// Splits on a single TAB. Number of fields = tabs + 1 (no escaping; the data
// formats never contain tabs inside fields).
std::vector<std::string> split_tsv(const std::string& line);

// `key = value` configuration files: '#' starts a comment, blank lines are
// skipped, whitespace around key and value is trimmed. Later keys override
// earlier ones. Throws ParseError on lines without '='.
std::map<std::string, std::string> read_config(const std::string& path);

std::string trim(const std::string& s);

// Ordered key/value manifest, serialized as `key<TAB>value` lines. Every
// command that writes outputs drops one of these next to them with enough
// detail (inputs, checksums, seed, counts) to re-run the command.
class Manifest {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, uint64_t value);
  // Adds `<key>.path` and `<key>.sha256` for a file.
  void add_file(const std::string& key, const std::string& path);
  void save(const std::string& path) const;
  const std::vector<std::pair<std::string, std::string>>& entries() const {
    return entries_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace scriptnorm
