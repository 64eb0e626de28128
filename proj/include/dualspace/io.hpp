#pragma once

// Text formats for vectors, matrices and threads.
//
// Vector file:
//   field: GF(p) | QQ
//   dim: <n> | omega
//   kind: sparse | prefix
//   then, for sparse, lines "<index> <scalar>" with strictly increasing
//   indices and nonzero values; for prefix, the two lines
//   "prefix: <scalars...>" and "tail: zeros | repeat <scalars...>".
//
// Matrix file:
//   field: ..., rows: <n>|omega, cols: <n>|omega,
//   kind: triplets | identity | shift <k> | diagblock
//   then "<row> <col> <scalar>" lines in strictly increasing row-major order
//   (triplets) or "block: <scalars...>" (diagblock).
//
// Header lines may come in any order but all precede the data. Blank lines
// and lines starting with '#' are ignored. Serialization is canonical, so
// serialize(parse(text)) == text for canonical input.

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "dualspace/error.hpp"
#include "dualspace/field.hpp"
#include "dualspace/limits.hpp"
#include "dualspace/rowfinite.hpp"
#include "dualspace/seq.hpp"

namespace dualspace::io {

using AnyVec = std::variant<FinSuppVec, ProdVec>;

namespace detail {

struct Line {
  std::size_t number;
  std::string text;
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    const auto line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') out.push_back({number, std::string(line)});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

/// Splits "key: value"; nullopt when there is no colon.
inline std::optional<std::pair<std::string, std::string>> key_value(std::string_view line) {
  const auto colon = line.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  return std::pair{std::string(trim(line.substr(0, colon))), std::string(trim(line.substr(colon + 1)))};
}

[[noreturn]] inline void invariant(std::size_t line, const std::string& what) {
  fail(ErrorKind::InvariantViolation, "line " + std::to_string(line) + ": " + what);
}

/// Rethrows library errors raised while interpreting one line as ParseError.
template <typename F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::InvariantViolation) throw;
    throw ParseError(line, e.what());
  }
}

inline std::size_t parse_index(std::size_t line, const std::string& tok) {
  if (tok.empty() || tok.size() > 18 || tok.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError(line, "expected an index, got '" + tok + "'");
  }
  return static_cast<std::size_t>(std::stoull(tok));
}

inline DenseVec parse_scalars(std::size_t line, FieldSpec spec, const std::vector<std::string>& toks,
                              std::size_t from) {
  DenseVec out;
  for (std::size_t k = from; k < toks.size(); ++k) {
    out.push_back(at_line(line, [&] { return Scalar::parse(spec, toks[k]); }));
  }
  return out;
}

inline std::string join(const DenseVec& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ' ';
    out += v[k].to_string();
  }
  return out;
}

/// Reads the header block: every key in `keys` exactly once, before any data.
/// Returns the values and the index of the first data line.
inline std::pair<std::map<std::string, std::pair<std::size_t, std::string>>, std::size_t> read_header(
    const std::vector<Line>& lines, const std::vector<std::string_view>& keys) {
  std::map<std::string, std::pair<std::size_t, std::string>> values;
  std::size_t k = 0;
  for (; k < lines.size() && values.size() < keys.size(); ++k) {
    auto kv = key_value(lines[k].text);
    if (!kv) throw ParseError(lines[k].number, "expected a header line before data");
    bool known = false;
    for (auto key : keys) known = known || key == kv->first;
    if (!known) throw ParseError(lines[k].number, "unknown header key '" + kv->first + "'");
    if (values.count(kv->first)) throw ParseError(lines[k].number, "duplicate header key '" + kv->first + "'");
    values[kv->first] = {lines[k].number, kv->second};
  }
  for (auto key : keys) {
    if (!values.count(std::string(key))) throw ParseError(0, "missing header key '" + std::string(key) + "'");
  }
  return {values, k};
}

}  // namespace detail

inline AnyVec parse_vector(std::string_view text) {
  const auto lines = detail::content_lines(text);
  auto [hdr, k] = detail::read_header(lines, {"field", "dim", "kind"});
  const FieldSpec spec = detail::at_line(hdr["field"].first, [&] { return FieldSpec::parse(hdr["field"].second); });
  const Dim dim = detail::at_line(hdr["dim"].first, [&] { return Dim::parse(hdr["dim"].second); });
  const auto& [kind_line, kind] = hdr["kind"];

  if (kind == "sparse") {
    FinSuppVec::Entries entries;
    std::optional<std::size_t> last;
    for (; k < lines.size(); ++k) {
      const auto& ln = lines[k];
      const auto toks = detail::tokens(ln.text);
      if (toks.size() != 2) throw ParseError(ln.number, "expected '<index> <scalar>'");
      const std::size_t i = detail::parse_index(ln.number, toks[0]);
      const Scalar s = detail::at_line(ln.number, [&] { return Scalar::parse(spec, toks[1]); });
      if (last && i == *last) detail::invariant(ln.number, "duplicate index " + std::to_string(i));
      if (last && i < *last) detail::invariant(ln.number, "indices not increasing");
      if (s.is_zero()) detail::invariant(ln.number, "stored zero at index " + std::to_string(i));
      if (!dim.contains(i)) detail::invariant(ln.number, "index " + std::to_string(i) + " outside dimension");
      entries.emplace(i, s);
      last = i;
    }
    return FinSuppVec::from_map(spec, dim, std::move(entries));
  }

  if (kind == "prefix") {
    if (lines.size() - k != 2) throw ParseError(k < lines.size() ? lines[k].number : 0, "expected prefix and tail lines");
    const auto pre = detail::key_value(lines[k].text);
    if (!pre || pre->first != "prefix") throw ParseError(lines[k].number, "expected 'prefix:'");
    DenseVec prefix = detail::parse_scalars(lines[k].number, spec, detail::tokens(pre->second), 0);
    const auto tl = detail::key_value(lines[k + 1].text);
    if (!tl || tl->first != "tail") throw ParseError(lines[k + 1].number, "expected 'tail:'");
    const auto toks = detail::tokens(tl->second);
    const bool zeros = toks.size() == 1 && toks[0] == "zeros";
    const bool repeat = toks.size() >= 2 && toks[0] == "repeat";
    if (!zeros && !repeat) throw ParseError(lines[k + 1].number, "expected 'zeros' or 'repeat <scalars>'");
    TailSpec tail = ZerosTail{};
    if (repeat) tail = RepeatTail{detail::parse_scalars(lines[k + 1].number, spec, toks, 1)};
    return detail::at_line(lines[k].number, [&] { return ProdVec::make(spec, dim, std::move(prefix), std::move(tail)); });
  }

  throw ParseError(kind_line, "unknown vector kind '" + kind + "'");
}

inline std::string serialize(const FinSuppVec& x) {
  std::string out = "field: " + x.spec().to_string() + "\ndim: " + x.dim().to_string() + "\nkind: sparse\n";
  for (const auto& [i, s] : x.entries()) out += std::to_string(i) + " " + s.to_string() + "\n";
  return out;
}

inline std::string serialize(const ProdVec& y) {
  std::string out = "field: " + y.spec().to_string() + "\ndim: " + y.dim().to_string() + "\nkind: prefix\n";
  out += y.prefix().empty() ? "prefix:\n" : "prefix: " + detail::join(y.prefix()) + "\n";
  if (const auto* rep = std::get_if<RepeatTail>(&y.tail())) {
    out += "tail: repeat " + detail::join(rep->block) + "\n";
  } else {
    out += "tail: zeros\n";
  }
  return out;
}

inline std::string serialize(const AnyVec& v) {
  return std::visit([](const auto& x) { return serialize(x); }, v);
}

inline RowFiniteMatrix parse_matrix(std::string_view text) {
  const auto lines = detail::content_lines(text);
  auto [hdr, k] = detail::read_header(lines, {"field", "rows", "cols", "kind"});
  const FieldSpec spec = detail::at_line(hdr["field"].first, [&] { return FieldSpec::parse(hdr["field"].second); });
  const Dim rows = detail::at_line(hdr["rows"].first, [&] { return Dim::parse(hdr["rows"].second); });
  const Dim cols = detail::at_line(hdr["cols"].first, [&] { return Dim::parse(hdr["cols"].second); });
  const auto& [kind_line, kind] = hdr["kind"];
  const auto kind_toks = detail::tokens(kind);

  auto expect_no_data = [&] {
    if (k < lines.size()) throw ParseError(lines[k].number, "unexpected data for kind '" + kind + "'");
  };

  if (kind == "identity") {
    expect_no_data();
    if (rows != cols) throw ParseError(kind_line, "identity needs rows = cols");
    return RowFiniteMatrix::identity(spec, rows);
  }
  if (kind_toks.size() == 2 && kind_toks[0] == "shift") {
    expect_no_data();
    const std::size_t shift = detail::parse_index(kind_line, kind_toks[1]);
    return detail::at_line(kind_line, [&] { return RowFiniteMatrix::shift(spec, rows, cols, shift); });
  }
  if (kind == "diagblock") {
    if (lines.size() - k != 1) throw ParseError(k < lines.size() ? lines[k].number : kind_line, "expected one 'block:' line");
    const auto kv = detail::key_value(lines[k].text);
    if (!kv || kv->first != "block") throw ParseError(lines[k].number, "expected 'block:'");
    DenseVec block = detail::parse_scalars(lines[k].number, spec, detail::tokens(kv->second), 0);
    return detail::at_line(lines[k].number,
                           [&] { return RowFiniteMatrix::diag_block(spec, rows, cols, std::move(block)); });
  }
  if (kind == "triplets") {
    std::map<std::size_t, FinSuppVec::Entries> body;
    std::optional<std::pair<std::size_t, std::size_t>> last;
    for (; k < lines.size(); ++k) {
      const auto& ln = lines[k];
      const auto toks = detail::tokens(ln.text);
      if (toks.size() != 3) throw ParseError(ln.number, "expected '<row> <col> <scalar>'");
      const std::size_t r = detail::parse_index(ln.number, toks[0]);
      const std::size_t c = detail::parse_index(ln.number, toks[1]);
      const Scalar s = detail::at_line(ln.number, [&] { return Scalar::parse(spec, toks[2]); });
      const std::pair pos{r, c};
      if (last && pos == *last) detail::invariant(ln.number, "duplicate coordinate");
      if (last && pos < *last) detail::invariant(ln.number, "triplets not sorted row-major");
      if (s.is_zero()) detail::invariant(ln.number, "stored zero");
      if (!rows.contains(r) || !cols.contains(c)) detail::invariant(ln.number, "coordinate outside dimensions");
      body[r].emplace(c, s);
      last = pos;
    }
    std::map<std::size_t, FinSuppVec> rows_map;
    for (auto& [r, entries] : body) rows_map.emplace(r, FinSuppVec::from_map(spec, cols, std::move(entries)));
    return RowFiniteMatrix::explicit_rows(spec, rows, cols, std::move(rows_map));
  }
  throw ParseError(kind_line, "unknown matrix kind '" + kind + "'");
}

inline std::string serialize(const RowFiniteMatrix& m) {
  std::string out = "field: " + m.spec().to_string() + "\nrows: " + m.row_dim().to_string() +
                    "\ncols: " + m.col_dim().to_string() + "\n";
  std::visit(
      [&](const auto& b) {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, ExplicitRows>) {
          out += "kind: triplets\n";
          for (const auto& [j, r] : b.rows) {
            for (const auto& [i, s] : r.entries()) {
              out += std::to_string(j) + " " + std::to_string(i) + " " + s.to_string() + "\n";
            }
          }
        } else if constexpr (std::is_same_v<B, IdentityRule>) {
          out += "kind: identity\n";
        } else if constexpr (std::is_same_v<B, ShiftRule>) {
          out += "kind: shift " + std::to_string(b.k) + "\n";
        } else {
          out += "kind: diagblock\nblock: " + detail::join(b.block) + "\n";
        }
      },
      m.body());
  return out;
}

/// One line per stage, space-separated.
inline std::string serialize(const Thread& t) {
  std::string out;
  for (const auto& stage : t.stages()) out += detail::join(stage) + "\n";
  return out;
}

}  // namespace dualspace::io
