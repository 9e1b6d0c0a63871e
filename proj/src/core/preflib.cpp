#include "prefforge/preflib.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace prefforge {

namespace {

constexpr std::string_view kNumberAlternatives = "NUMBER ALTERNATIVES";
constexpr std::string_view kNumberVoters = "NUMBER VOTERS";
constexpr std::string_view kNumberUnique = "NUMBER UNIQUE ORDERS";
constexpr std::string_view kAlternativeName = "ALTERNATIVE NAME ";
constexpr std::string_view kDataType = "DATA TYPE";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<long long> to_integer(std::string_view s) {
  s = trim(s);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return value;
}

TiedRanking parse_ranking(std::string_view text, int m, std::size_t line) {
  TiedRanking out;
  std::vector<bool> seen(static_cast<std::size_t>(m), false);
  auto add = [&](std::vector<Candidate>& group, std::string_view token) {
    const auto value = to_integer(token);
    if (!value) throw ParseError(line, "invalid alternative '" + std::string(trim(token)) + "'");
    if (*value < 1 || *value > m) {
      throw ParseError(line, "alternative " + std::to_string(*value) + " out of range 1.." + std::to_string(m));
    }
    const auto c = static_cast<std::size_t>(*value - 1);
    if (seen[c]) throw ParseError(line, "alternative " + std::to_string(*value) + " ranked twice");
    seen[c] = true;
    group.push_back(static_cast<Candidate>(c));
  };

  std::size_t i = 0;
  text = trim(text);
  while (i < text.size()) {
    if (text[i] == '{') {
      const auto close = text.find('}', i);
      if (close == std::string_view::npos) throw ParseError(line, "unterminated '{'");
      std::vector<Candidate> group;
      std::string_view inner = trim(text.substr(i + 1, close - i - 1));
      while (!inner.empty()) {
        const auto comma = inner.find(',');
        add(group, inner.substr(0, comma));
        if (comma == std::string_view::npos) break;
        inner = inner.substr(comma + 1);
        if (trim(inner).empty()) throw ParseError(line, "trailing ',' inside tie group");
      }
      out.push_back(std::move(group));
      i = close + 1;
    } else {
      const auto comma = text.find(',', i);
      std::vector<Candidate> group;
      add(group, text.substr(i, comma == std::string_view::npos ? std::string_view::npos : comma - i));
      out.push_back(std::move(group));
      i = comma == std::string_view::npos ? text.size() : comma;
    }
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError(line, "expected ',' in ranking");
      ++i;
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
      if (i >= text.size()) throw ParseError(line, "trailing ',' in ranking");
    }
  }
  return out;
}

void check_conformance(const TiedRanking& r, PreflibType type, int m, std::size_t line) {
  const bool strict = type == PreflibType::soc || type == PreflibType::soi;
  const bool complete = type == PreflibType::soc || type == PreflibType::toc;
  std::size_t ranked = 0;
  for (const auto& g : r) {
    if (strict && g.size() != 1) throw ParseError(line, "ties are not allowed in " + std::string(to_string(type)));
    if (g.empty() && complete) throw ParseError(line, "empty tie group");
    ranked += g.size();
  }
  if (complete && ranked != static_cast<std::size_t>(m)) {
    throw ParseError(line, std::string(to_string(type)) + " ballot ranks " + std::to_string(ranked) +
                               " of " + std::to_string(m) + " alternatives");
  }
}

std::string format_ranking(const TiedRanking& r) {
  std::string out;
  for (std::size_t g = 0; g < r.size(); ++g) {
    if (g) out += ',';
    const auto& group = r[g];
    if (group.size() == 1) {
      out += std::to_string(group[0] + 1);
      continue;
    }
    out += '{';
    for (std::size_t k = 0; k < group.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(group[k] + 1);
    }
    out += '}';
  }
  return out;
}

Metadata default_metadata() {
  return {{"FILE NAME", ""},       {"TITLE", ""},           {"DESCRIPTION", ""},
          {"DATA TYPE", ""},       {"MODIFICATION TYPE", "synthetic"},
          {"RELATES TO", ""},      {"RELATED FILES", ""},   {"PUBLICATION DATE", ""},
          {"MODIFICATION DATE", ""}};
}

std::vector<std::string> names_or_default(const std::vector<std::string>& names, int m) {
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != m) {
      throw std::invalid_argument("serialize_preflib: expected " + std::to_string(m) + " alternative names");
    }
    return names;
  }
  std::vector<std::string> out;
  for (int c = 0; c < m; ++c) out.push_back("Candidate " + std::to_string(c + 1));
  return out;
}

PreflibDocument parse_impl(std::string_view text, std::optional<PreflibType> expected) {
  PreflibDocument doc;
  std::optional<long long> num_alternatives;
  std::optional<long long> num_voters;
  std::size_t voters_line = 0;
  std::optional<PreflibType> declared;
  std::vector<std::pair<std::size_t, std::string>> names;
  long long total = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      const auto colon = body.find(':');
      if (colon == std::string_view::npos) continue;  // plain comment
      const std::string key(trim(body.substr(0, colon)));
      const std::string value(trim(body.substr(colon + 1)));
      if (key == kNumberAlternatives) {
        num_alternatives = to_integer(value);
        if (!num_alternatives || *num_alternatives < 1) throw ParseError(line_no, "invalid NUMBER ALTERNATIVES");
      } else if (key == kNumberVoters) {
        num_voters = to_integer(value);
        voters_line = line_no;
        if (!num_voters || *num_voters < 0) throw ParseError(line_no, "invalid NUMBER VOTERS");
      } else if (key == kNumberUnique) {
        if (!to_integer(value)) throw ParseError(line_no, "invalid NUMBER UNIQUE ORDERS");
      } else if (key.rfind(kAlternativeName, 0) == 0) {
        const auto index = to_integer(std::string_view(key).substr(kAlternativeName.size()));
        if (!index || *index < 1) throw ParseError(line_no, "invalid alternative name index");
        names.emplace_back(static_cast<std::size_t>(*index), value);
      } else {
        if (key == kDataType) {
          declared = preflib_type_from_string(value);
          if (!declared) throw ParseError(line_no, "unknown DATA TYPE '" + value + "'");
          if (expected && *declared != *expected) {
            throw ParseError(line_no, "file declares " + value + ", expected " + std::string(to_string(*expected)));
          }
        }
        doc.metadata.emplace_back(key, value);
      }
      continue;
    }

    if (!num_alternatives) throw ParseError(line_no, "malformed header: ballot before NUMBER ALTERNATIVES");
    if (!expected && !declared) throw ParseError(line_no, "malformed header: missing DATA TYPE");
    const PreflibType type = expected ? *expected : *declared;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(line_no, "expected 'count: ranking'");
    const auto count = to_integer(line.substr(0, colon));
    if (!count || *count < 1) throw ParseError(line_no, "invalid vote count");
    const int m = static_cast<int>(*num_alternatives);
    TiedRanking ranking = parse_ranking(line.substr(colon + 1), m, line_no);
    check_conformance(ranking, type, m, line_no);
    total += *count;
    if (num_voters && total > *num_voters) {
      throw ParseError(line_no, "vote counts exceed NUMBER VOTERS = " + std::to_string(*num_voters));
    }
    for (long long k = 0; k < *count; ++k) doc.votes.push_back(ranking);
  }

  if (!num_alternatives) throw ParseError(line_no == 0 ? 1 : line_no, "malformed header: missing NUMBER ALTERNATIVES");
  if (!num_voters) throw ParseError(line_no == 0 ? 1 : line_no, "malformed header: missing NUMBER VOTERS");
  if (total != *num_voters) {
    throw ParseError(voters_line, "NUMBER VOTERS is " + std::to_string(*num_voters) + " but ballots count " +
                                      std::to_string(total));
  }
  if (expected) {
    doc.type = *expected;
  } else if (declared) {
    doc.type = *declared;
  } else {
    throw ParseError(1, "malformed header: missing DATA TYPE");
  }
  doc.num_alternatives = static_cast<int>(*num_alternatives);
  if (!names.empty()) {
    doc.alternative_names.assign(static_cast<std::size_t>(doc.num_alternatives), "");
    for (const auto& [index, name] : names) {
      if (index > doc.alternative_names.size()) {
        throw ParseError(1, "alternative name index " + std::to_string(index) + " out of range");
      }
      doc.alternative_names[index - 1] = name;
    }
  }
  return doc;
}

}  // namespace

std::string_view to_string(PreflibType type) {
  switch (type) {
    case PreflibType::soc:
      return "soc";
    case PreflibType::soi:
      return "soi";
    case PreflibType::toc:
      return "toc";
    case PreflibType::toi:
      return "toi";
  }
  return "soc";
}

std::optional<PreflibType> preflib_type_from_string(std::string_view name) {
  if (name == "soc") return PreflibType::soc;
  if (name == "soi") return PreflibType::soi;
  if (name == "toc") return PreflibType::toc;
  if (name == "toi") return PreflibType::toi;
  return std::nullopt;
}

OrdinalElection PreflibDocument::to_ordinal() const {
  std::vector<PreferenceOrder> out;
  out.reserve(votes.size());
  for (std::size_t i = 0; i < votes.size(); ++i) {
    const auto& r = votes[i];
    if (static_cast<int>(r.size()) != num_alternatives ||
        std::any_of(r.begin(), r.end(), [](const auto& g) { return g.size() != 1; })) {
      throw std::invalid_argument("vote " + std::to_string(i) + " is not a complete strict order");
    }
    std::vector<Candidate> ranking;
    for (const auto& g : r) ranking.push_back(g[0]);
    out.emplace_back(std::move(ranking));
  }
  return OrdinalElection(num_alternatives, std::move(out));
}

ApprovalElection PreflibDocument::to_approval() const {
  std::vector<ApprovalBallot> out;
  out.reserve(votes.size());
  for (std::size_t i = 0; i < votes.size(); ++i) {
    const auto& r = votes[i];
    if (r.size() > 1) {
      throw std::invalid_argument("vote " + std::to_string(i) + " has more than one group; not an approval ballot");
    }
    out.emplace_back(r.empty() ? std::vector<Candidate>{} : r[0]);
  }
  return ApprovalElection(num_alternatives, std::move(out));
}

PreflibDocument parse_preflib(std::string_view text, PreflibType expected) { return parse_impl(text, expected); }

PreflibDocument parse_preflib(std::string_view text) { return parse_impl(text, std::nullopt); }

PreflibDocument to_document(const OrdinalElection& e, const PreflibWriteOptions& options) {
  PreflibDocument doc;
  doc.type = PreflibType::soc;
  doc.metadata = options.metadata.empty() ? default_metadata() : options.metadata;
  doc.num_alternatives = e.num_candidates();
  doc.alternative_names = names_or_default(options.alternative_names, e.num_candidates());
  doc.votes.reserve(static_cast<std::size_t>(e.num_voters()));
  for (const auto& v : e.votes()) {
    TiedRanking r;
    for (Candidate c : v) r.push_back({c});
    doc.votes.push_back(std::move(r));
  }
  return doc;
}

PreflibDocument to_document(const ApprovalElection& e, const PreflibWriteOptions& options) {
  PreflibDocument doc;
  doc.type = PreflibType::toi;
  doc.metadata = options.metadata.empty() ? default_metadata() : options.metadata;
  doc.num_alternatives = e.num_candidates();
  doc.alternative_names = names_or_default(options.alternative_names, e.num_candidates());
  doc.votes.reserve(static_cast<std::size_t>(e.num_voters()));
  for (const auto& b : e.ballots()) {
    doc.votes.push_back({std::vector<Candidate>(b.begin(), b.end())});
  }
  return doc;
}

std::string serialize_preflib(const PreflibDocument& doc) {
  std::ostringstream os;
  auto header = [&](std::string_view key, std::string_view value) {
    os << "# " << key << ':';
    if (!value.empty()) os << ' ' << value;
    os << '\n';
  };
  const bool has_type = std::any_of(doc.metadata.begin(), doc.metadata.end(),
                                    [](const auto& kv) { return kv.first == kDataType; });
  if (!has_type) header(kDataType, to_string(doc.type));
  for (const auto& [key, value] : doc.metadata) {
    header(key, key == kDataType ? to_string(doc.type) : std::string_view(value));
  }
  std::set<TiedRanking> unique(doc.votes.begin(), doc.votes.end());
  header(kNumberAlternatives, std::to_string(doc.num_alternatives));
  header(kNumberVoters, std::to_string(doc.votes.size()));
  header(kNumberUnique, std::to_string(unique.size()));
  for (std::size_t c = 0; c < doc.alternative_names.size(); ++c) {
    header(std::string(kAlternativeName) + std::to_string(c + 1), doc.alternative_names[c]);
  }
  for (std::size_t i = 0; i < doc.votes.size();) {
    std::size_t j = i + 1;
    while (j < doc.votes.size() && doc.votes[j] == doc.votes[i]) ++j;
    const TiedRanking& r = doc.votes[i];
    os << (j - i) << ':';
    // An empty toi ballot is written as an empty tie group.
    os << ' ' << (r.empty() ? std::string("{}") : format_ranking(r)) << '\n';
    i = j;
  }
  return os.str();
}

std::string serialize_preflib(const OrdinalElection& e, const PreflibWriteOptions& options) {
  return serialize_preflib(to_document(e, options));
}

std::string serialize_preflib(const ApprovalElection& e, const PreflibWriteOptions& options) {
  return serialize_preflib(to_document(e, options));
}

}  // namespace prefforge
