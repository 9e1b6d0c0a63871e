#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prefforge/election.hpp"

namespace prefforge {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// soc: strict complete, soi: strict incomplete, toc: complete with ties,
// toi: incomplete with ties.
enum class PreflibType { soc, soi, toc, toi };

std::string_view to_string(PreflibType type);
std::optional<PreflibType> preflib_type_from_string(std::string_view name);

using Metadata = std::vector<std::pair<std::string, std::string>>;

// A ballot as written in a PrefLib file: groups of tied candidates, best
// group first. Unranked candidates are absent.
using TiedRanking = std::vector<std::vector<Candidate>>;

struct PreflibDocument {
  PreflibType type = PreflibType::soc;
  // Header entries in file order, except the counts and alternative names,
  // which are regenerated on output.
  Metadata metadata;
  int num_alternatives = 0;
  // Index c holds the name of candidate c; empty when the file has none.
  std::vector<std::string> alternative_names;
  // One entry per voter (multiplicities expanded), in file order.
  std::vector<TiedRanking> votes;

  // Throws std::invalid_argument unless every vote is a complete strict order.
  OrdinalElection to_ordinal() const;
  // Each vote must be at most one group (the approved set).
  ApprovalElection to_approval() const;
};

// Parses the 2023 PrefLib text format. Throws ParseError (with the 1-based
// line number) on malformed input or when the content does not conform to
// `expected`.
PreflibDocument parse_preflib(std::string_view text, PreflibType expected);
// Same, taking the type from the DATA TYPE header.
PreflibDocument parse_preflib(std::string_view text);

struct PreflibWriteOptions {
  // Non-structural header entries; defaults are used when empty.
  Metadata metadata;
  std::vector<std::string> alternative_names;
};

// soc file; identical consecutive votes share one `count:` line.
std::string serialize_preflib(const OrdinalElection& e, const PreflibWriteOptions& options = {});
// toi file with the approved set as a single tied top group.
std::string serialize_preflib(const ApprovalElection& e, const PreflibWriteOptions& options = {});
std::string serialize_preflib(const PreflibDocument& doc);

PreflibDocument to_document(const OrdinalElection& e, const PreflibWriteOptions& options = {});
PreflibDocument to_document(const ApprovalElection& e, const PreflibWriteOptions& options = {});

}  // namespace prefforge
