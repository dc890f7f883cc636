// Copyright 2026 The ldpg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPG_IO_HPP_
#define LDPG_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldpg/concept_class.hpp"
#include "ldpg/distribution.hpp"
#include "ldpg/factor_norms.hpp"
#include "ldpg/hard_instances.hpp"
#include "ldpg/indexed_matrix.hpp"
#include "ldpg/ldp.hpp"

namespace ldpg {

using Json = nlohmann::json;

Json json_of(const IndexedMatrix& m);
Json json_of(const ConceptClass& cls);
Json json_of(const WeightedIndex& w);
Json json_of(const LabeledDistribution& d);
Json json_of(const Certificate& c);
Json json_of(const Factorization& f);
Json json_of(const Gamma2Result& r);
Json json_of(const DualWitness& w);
Json json_of(const EtaSolution& e);
Json json_of(const VerificationReport& r);
Json json_of(const BinningResult& b);
Json json_of(const AgnosticHardFamily& f);
Json json_of(const RefinedAgnosticFamily& f);
Json json_of(const RealizableHardFamily& f);
Json json_of(const RefinedRealizableFamily& f);
Json json_of(const MixedFamily& f);
Json json_of(const ReweightResult& r);
Json json_of(const PrivacyAudit& a);

IndexedMatrix matrix_from_json(const Json& j);
ConceptClass class_from_json(const Json& j);
DualWitness witness_from_json(const Json& j);

/// Reads a JSON document; throws InvalidArgument on I/O or parse errors.
Json read_json_file(const std::string& path);
/// Writes `j` indented by two spaces with a trailing newline.
void write_json_file(const std::string& path, const Json& j);
void write_text_file(const std::string& path, const std::string& text);

/// Header "x,y", one record per line.
void write_dataset_csv(std::ostream& out, const Dataset& data);
Dataset read_dataset_csv(std::istream& in, const std::vector<std::string>& domain);

/// coord-rr: "record_index,symbol"; laplace-l1: "record_index,v0,v1,...".
void write_transcript_csv(std::ostream& out, const std::vector<TranscriptMessage>& messages,
                          RandomizerKind kind);

}  // namespace ldpg

#endif  // LDPG_IO_HPP_
