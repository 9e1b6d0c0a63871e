#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "prefforge/election.hpp"
#include "prefforge/preflib.hpp"

namespace prefforge {

// Everything in a .pb file except the approval sets themselves: META
// key/value rows, the PROJECTS table (costs, names, ...) and the non-vote
// columns of the VOTES table.
struct PabulibMetadata {
  Metadata meta;
  std::vector<std::string> project_columns;
  std::vector<std::vector<std::string>> projects;
  std::vector<std::string> vote_columns;
  // Same shape as vote_columns; the `vote` cell is ignored on output and
  // regenerated from the election.
  std::vector<std::vector<std::string>> votes;

  std::vector<std::string> project_ids() const;
};

struct PabulibFile {
  ApprovalElection election;
  PabulibMetadata metadata;
};

// Projects are indexed in file order; the `vote` column is a comma-separated
// list of project ids. Throws ParseError for a missing section, unknown
// project ids, or malformed rows.
PabulibFile parse_pabulib(std::string_view text);

// When `metadata` has no projects/votes tables, projects get ids 1..m with
// unit cost and voters ids 1..n. num_projects/num_votes are always written
// with the actual counts.
std::string serialize_pabulib(const ApprovalElection& e, const PabulibMetadata& metadata = {});

}  // namespace prefforge
