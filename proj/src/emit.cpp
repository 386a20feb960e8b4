// Copyright 2026 The rmtq authors
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

#include "rmtq/emit.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace rmtq {

EmitFormat emit_format_from_string(const std::string& s) {
  if (s == "csv") return EmitFormat::Csv;
  if (s == "jsonl" || s == "json-lines") return EmitFormat::JsonLines;
  throw std::invalid_argument("unknown output format: " + s);
}

std::string field_to_string(const Field& f) {
  if (const auto* i = std::get_if<std::int64_t>(&f)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&f)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  return std::get<std::string>(f);
}

ResultWriter::ResultWriter(std::ostream& os, EmitFormat format,
                           std::vector<std::string> columns)
    : os_(os), format_(format), columns_(std::move(columns)) {
  if (format_ == EmitFormat::Csv) {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      if (i) os_ << ',';
      os_ << columns_[i];
    }
    os_ << '\n';
  }
}

void ResultWriter::row(const std::vector<Field>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("result row does not match the column schema");
  if (format_ == EmitFormat::Csv) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) os_ << ',';
      os_ << field_to_string(values[i]);
    }
    os_ << '\n';
  } else {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (const auto* v = std::get_if<std::int64_t>(&values[i]))
        obj[columns_[i]] = *v;
      else if (const auto* d = std::get_if<double>(&values[i]))
        obj[columns_[i]] = *d;
      else
        obj[columns_[i]] = std::get<std::string>(values[i]);
    }
    os_ << obj.dump() << '\n';
  }
  ++rows_;
}

}  // namespace rmtq
