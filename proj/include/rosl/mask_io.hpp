// Copyright 2026 The rosl-preimage Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>

#include "rosl/preimage.hpp"

namespace rosl {

/// Shortest decimal string that round-trips to `v`.
std::string format_double(double v);

/// CSV export. First line:
///   # dim=<d> lower=<a,b> upper=<a,b> nodes=<n> ybar=<a,b> source=<outer|oracle>
///     tol=<t> map=<id> base=<desc>
/// (a single line), then one row per node in linear order (axis 0 fastest):
/// the node coordinates followed by 0 or 1.
void write_mask_csv(const GridMask& mask, std::ostream& out);

/// Plain PGM (P2) for 2D masks: width = nodes along axis 0, height = nodes
/// along axis 1, first image row is the highest axis-1 index. 0 = outside,
/// 255 = member; one image row per line.
void write_mask_pgm(const GridMask& mask, std::ostream& out);

/// Parses a CSV written by write_mask_csv.
GridMask read_mask_csv(std::istream& in);

void write_mask_csv_file(const GridMask& mask, const std::string& path);
void write_mask_pgm_file(const GridMask& mask, const std::string& path);
GridMask read_mask_csv_file(const std::string& path);

} // namespace rosl
