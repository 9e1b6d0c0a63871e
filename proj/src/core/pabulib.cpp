#include "prefforge/pabulib.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace prefforge {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(std::string_view line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ';') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else {
      cell += ch;
    }
  }
  if (quoted) throw ParseError(line_no, "unterminated quoted field");
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

std::string quote_if_needed(const std::string& cell) {
  const bool needs = cell.find_first_of(";\"") != std::string::npos ||
                     (!cell.empty() && (cell.front() == ' ' || cell.back() == ' '));
  if (!needs) return cell;
  std::string out = "\"";
  for (char ch : cell) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

void write_row(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ';';
    os << quote_if_needed(cells[i]);
  }
  os << '\n';
}

std::ptrdiff_t column_index(const std::vector<std::string>& columns, std::string_view name) {
  const auto it = std::find(columns.begin(), columns.end(), name);
  return it == columns.end() ? -1 : it - columns.begin();
}

enum class Section { none, meta, projects, votes };

}  // namespace

std::vector<std::string> PabulibMetadata::project_ids() const {
  const auto id_col = column_index(project_columns, "project_id");
  std::vector<std::string> ids;
  for (const auto& row : projects) {
    ids.push_back(id_col >= 0 ? row[static_cast<std::size_t>(id_col)] : row.at(0));
  }
  return ids;
}

PabulibFile parse_pabulib(std::string_view text) {
  PabulibMetadata md;
  std::vector<std::size_t> vote_lines;
  Section section = Section::none;
  bool expect_header = false;
  bool seen_meta = false, seen_projects = false, seen_votes = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty()) continue;

    if (line == "META" || line == "PROJECTS" || line == "VOTES") {
      section = line == "META" ? Section::meta : line == "PROJECTS" ? Section::projects : Section::votes;
      bool& seen = section == Section::meta ? seen_meta : section == Section::projects ? seen_projects : seen_votes;
      if (seen) throw ParseError(line_no, "duplicate " + line + " section");
      seen = true;
      expect_header = true;
      continue;
    }
    if (section == Section::none) throw ParseError(line_no, "content before the META section");

    std::vector<std::string> cells = split_row(raw, line_no);
    if (expect_header) {
      expect_header = false;
      if (section == Section::projects) {
        md.project_columns = std::move(cells);
        if (column_index(md.project_columns, "project_id") < 0) {
          throw ParseError(line_no, "PROJECTS header lacks project_id");
        }
      } else if (section == Section::votes) {
        md.vote_columns = std::move(cells);
        if (column_index(md.vote_columns, "vote") < 0) throw ParseError(line_no, "VOTES header lacks vote");
      }
      continue;
    }
    switch (section) {
      case Section::meta:
        if (cells.size() != 2) throw ParseError(line_no, "META rows must be key;value");
        md.meta.emplace_back(std::move(cells[0]), std::move(cells[1]));
        break;
      case Section::projects:
        if (cells.size() != md.project_columns.size()) throw ParseError(line_no, "PROJECTS row has wrong column count");
        md.projects.push_back(std::move(cells));
        break;
      case Section::votes:
        // A trailing empty vote cell may be dropped by some writers.
        if (cells.size() + 1 == md.vote_columns.size() &&
            column_index(md.vote_columns, "vote") == static_cast<std::ptrdiff_t>(md.vote_columns.size()) - 1) {
          cells.emplace_back();
        }
        if (cells.size() != md.vote_columns.size()) throw ParseError(line_no, "VOTES row has wrong column count");
        md.votes.push_back(std::move(cells));
        vote_lines.push_back(line_no);
        break;
      case Section::none:
        break;
    }
  }
  if (!seen_meta) throw ParseError(line_no, "missing META section");
  if (!seen_projects) throw ParseError(line_no, "missing PROJECTS section");
  if (!seen_votes) throw ParseError(line_no, "missing VOTES section");
  if (md.projects.empty()) throw ParseError(line_no, "PROJECTS section is empty");

  std::unordered_map<std::string, Candidate> index;
  const auto ids = md.project_ids();
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!index.emplace(ids[i], static_cast<Candidate>(i)).second) {
      throw ParseError(line_no, "duplicate project id '" + ids[i] + "'");
    }
  }

  const auto vote_col = static_cast<std::size_t>(column_index(md.vote_columns, "vote"));
  std::vector<ApprovalBallot> ballots;
  ballots.reserve(md.votes.size());
  for (std::size_t r = 0; r < md.votes.size(); ++r) {
    std::vector<Candidate> approved;
    std::string_view cell = md.votes[r][vote_col];
    while (!trim(cell).empty()) {
      const auto comma = cell.find(',');
      const std::string id = trim(cell.substr(0, comma));
      const auto it = index.find(id);
      if (it == index.end()) throw ParseError(vote_lines[r], "vote references unknown project '" + id + "'");
      if (std::find(approved.begin(), approved.end(), it->second) != approved.end()) {
        throw ParseError(vote_lines[r], "project '" + id + "' approved twice");
      }
      approved.push_back(it->second);
      if (comma == std::string_view::npos) break;
      cell = cell.substr(comma + 1);
    }
    ballots.emplace_back(std::move(approved));
  }
  return {ApprovalElection(static_cast<int>(md.projects.size()), std::move(ballots)), std::move(md)};
}

std::string serialize_pabulib(const ApprovalElection& e, const PabulibMetadata& metadata) {
  const int m = e.num_candidates();
  const int n = e.num_voters();

  std::vector<std::string> project_columns = metadata.project_columns;
  std::vector<std::vector<std::string>> projects = metadata.projects;
  if (projects.empty()) {
    project_columns = {"project_id", "cost"};
    for (int c = 0; c < m; ++c) projects.push_back({std::to_string(c + 1), "1"});
  }
  if (static_cast<int>(projects.size()) != m) {
    throw std::invalid_argument("serialize_pabulib: metadata lists " + std::to_string(projects.size()) +
                                " projects, election has " + std::to_string(m));
  }

  std::vector<std::string> vote_columns = metadata.vote_columns;
  std::vector<std::vector<std::string>> votes = metadata.votes;
  if (votes.empty() && n > 0) {
    vote_columns = {"voter_id", "vote"};
    for (int v = 0; v < n; ++v) votes.push_back({std::to_string(v + 1), ""});
  }
  if (vote_columns.empty()) vote_columns = {"voter_id", "vote"};
  if (static_cast<int>(votes.size()) != n) {
    throw std::invalid_argument("serialize_pabulib: metadata lists " + std::to_string(votes.size()) +
                                " voters, election has " + std::to_string(n));
  }
  const auto vote_col = column_index(vote_columns, "vote");
  if (vote_col < 0) throw std::invalid_argument("serialize_pabulib: vote columns lack 'vote'");

  Metadata meta = metadata.meta;
  if (meta.empty()) {
    meta = {{"description", "synthetic approval election"},
            {"num_projects", ""},
            {"num_votes", ""},
            {"budget", std::to_string(m)},
            {"vote_type", "approval"}};
  }
  auto set_meta = [&](const std::string& key, const std::string& value) {
    const auto it = std::find_if(meta.begin(), meta.end(), [&](const auto& kv) { return kv.first == key; });
    if (it == meta.end()) {
      meta.emplace_back(key, value);
    } else {
      it->second = value;
    }
  };
  set_meta("num_projects", std::to_string(m));
  set_meta("num_votes", std::to_string(n));

  PabulibMetadata tables;
  tables.project_columns = project_columns;
  tables.projects = projects;
  const auto ids = tables.project_ids();

  std::ostringstream os;
  os << "META\n";
  write_row(os, {"key", "value"});
  for (const auto& [k, v] : meta) write_row(os, {k, v});
  os << "PROJECTS\n";
  write_row(os, project_columns);
  for (const auto& row : projects) write_row(os, row);
  os << "VOTES\n";
  write_row(os, vote_columns);
  for (int v = 0; v < n; ++v) {
    std::vector<std::string> row = votes[static_cast<std::size_t>(v)];
    std::string cell;
    for (Candidate c : e.ballot(v)) {
      if (!cell.empty()) cell += ',';
      cell += ids[static_cast<std::size_t>(c)];
    }
    row[static_cast<std::size_t>(vote_col)] = cell;
    write_row(os, row);
  }
  return os.str();
}

}  // namespace prefforge
