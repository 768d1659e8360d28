#include "rbrl/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string_view>

namespace rbrl {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
  return rng.next();
}

void shuffle_indices(std::vector<Index>& idx, SplitMix64& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.below(i));
    std::swap(idx[i - 1], idx[j]);
  }
}

DataFormat parse_format(const std::string& name) {
  if (name == "dense-csv") return DataFormat::DenseCsv;
  if (name == "sparse-mll") return DataFormat::SparseMll;
  throw ParseError("unknown dataset format '" + name +
                   "' (expected dense-csv or sparse-mll)");
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void parse_fail(const std::string& origin, std::size_t line,
                             std::size_t column, const std::string& message) {
  throw ParseError(origin + ":" + std::to_string(line) + ":" +
                   std::to_string(column) + ": " + message);
}

double parse_double_token(std::string_view tok, const std::string& origin,
                          std::size_t line, std::size_t column) {
  tok = trim(tok);
  double value = 0.0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || tok.empty()) {
    parse_fail(origin, line, column,
               "expected a real number, got '" + std::string(tok) + "'");
  }
  return value;
}

long parse_long_token(std::string_view tok, const std::string& origin,
                      std::size_t line, std::size_t column) {
  tok = trim(tok);
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
    parse_fail(origin, line, column,
               "expected an integer, got '" + std::string(tok) + "'");
  }
  return value;
}

double parse_label_token(std::string_view tok, const std::string& origin,
                         std::size_t line, std::size_t column) {
  tok = trim(tok);
  if (tok == "1" || tok == "+1") return 1.0;
  if (tok == "0" || tok == "-1") return -1.0;
  throw LabelOutOfRange(origin + ":" + std::to_string(line) + ":" +
                        std::to_string(column) + ": label token '" +
                        std::string(tok) + "' is not in {0,1,-1,+1}");
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

long parse_header_field(std::string_view field, char name,
                        const std::string& origin) {
  field = trim(field);
  if (field.size() < 3 || field[0] != name || field[1] != '=') {
    parse_fail(origin, 1, 1,
               std::string("malformed header field, expected ") + name +
                   "=<int>, got '" + std::string(field) + "'");
  }
  return parse_long_token(field.substr(2), origin, 1, 1);
}

Dataset read_dense_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(origin + ": empty file");
  }
  std::string_view header = trim(line);
  if (!header.starts_with("#mll")) {
    parse_fail(origin, 1, 1, "missing '#mll n=<n> m=<m> l=<l>' header");
  }
  std::istringstream hs{std::string(header.substr(4))};
  std::string f_n, f_m, f_l;
  if (!(hs >> f_n >> f_m >> f_l)) {
    parse_fail(origin, 1, 1, "header must carry n=, m= and l= fields");
  }
  const long n = parse_header_field(f_n, 'n', origin);
  const long m = parse_header_field(f_m, 'm', origin);
  const long l = parse_header_field(f_l, 'l', origin);
  if (n <= 0 || m <= 0 || l <= 0) {
    throw EmptyDataset(origin + ": header declares n=" + std::to_string(n) +
                       " m=" + std::to_string(m) + " l=" + std::to_string(l));
  }

  Matrix x(n, m);
  Matrix y(n, l);
  long row = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (row >= n) {
      parse_fail(origin, line_no, 1,
                 "more data rows than the declared n=" + std::to_string(n));
    }
    const auto tokens = split_on(trim(line), ',');
    if (static_cast<long>(tokens.size()) != m + l) {
      throw InconsistentWidth(
          origin + ":" + std::to_string(line_no) + ": expected " +
          std::to_string(m + l) + " comma-separated fields, got " +
          std::to_string(tokens.size()));
    }
    for (long j = 0; j < m; ++j) {
      x(row, j) = parse_double_token(tokens[static_cast<std::size_t>(j)],
                                     origin, line_no,
                                     static_cast<std::size_t>(j + 1));
    }
    for (long j = 0; j < l; ++j) {
      y(row, j) = parse_label_token(tokens[static_cast<std::size_t>(m + j)],
                                    origin, line_no,
                                    static_cast<std::size_t>(m + j + 1));
    }
    ++row;
  }
  if (row != n) {
    throw ParseError(origin + ": header declares n=" + std::to_string(n) +
                     " but the file holds " + std::to_string(row) +
                     " data rows");
  }
  Dataset ds = Dataset::from_xy(std::move(x), std::move(y));
  validate_dataset(ds);
  return ds;
}

Dataset read_sparse_mll(std::istream& in, const std::string& origin) {
  struct Row {
    std::vector<long> labels;
    std::vector<std::pair<long, double>> feats;
  };
  std::vector<Row> rows;
  long max_feature = 0;
  long max_label = 0;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    const std::size_t bar = body.find('|');
    if (bar == std::string_view::npos) {
      parse_fail(origin, line_no, 1, "missing '|' label/feature separator");
    }
    Row row;
    const std::string_view label_part = trim(body.substr(0, bar));
    if (!label_part.empty()) {
      for (auto tok : split_on(label_part, ',')) {
        const long lbl = parse_long_token(tok, origin, line_no, 1);
        if (lbl < 1) {
          throw LabelOutOfRange(origin + ":" + std::to_string(line_no) +
                                ": label index " + std::to_string(lbl) +
                                " is not 1-based");
        }
        if (std::find(row.labels.begin(), row.labels.end(), lbl) !=
            row.labels.end()) {
          parse_fail(origin, line_no, 1,
                     "duplicate label index " + std::to_string(lbl));
        }
        row.labels.push_back(lbl);
        max_label = std::max(max_label, lbl);
      }
    }
    const std::string_view feat_part = trim(body.substr(bar + 1));
    if (!feat_part.empty()) {
      std::size_t col = bar + 2;
      for (auto tok : split_on(feat_part, ' ')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        const std::size_t colon = tok.find(':');
        if (colon == std::string_view::npos) {
          parse_fail(origin, line_no, col,
                     "expected <index>:<value>, got '" + std::string(tok) +
                         "'");
        }
        const long idx = parse_long_token(tok.substr(0, colon), origin,
                                          line_no, col);
        if (idx < 1) {
          parse_fail(origin, line_no, col,
                     "feature index " + std::to_string(idx) +
                         " is not 1-based");
        }
        const double val =
            parse_double_token(tok.substr(colon + 1), origin, line_no, col);
        for (const auto& [seen, _] : row.feats) {
          if (seen == idx) {
            parse_fail(origin, line_no, col,
                       "duplicate feature index " + std::to_string(idx));
          }
        }
        row.feats.emplace_back(idx, val);
        max_feature = std::max(max_feature, idx);
        col += tok.size() + 1;
      }
    }
    rows.push_back(std::move(row));
  }

  const long n = static_cast<long>(rows.size());
  if (n == 0 || max_feature == 0 || max_label == 0) {
    throw EmptyDataset(origin + ": no rows, features or labels found");
  }
  Matrix x = Matrix::Zero(n, max_feature);
  Matrix y = Matrix::Constant(n, max_label, -1.0);
  for (long i = 0; i < n; ++i) {
    for (const auto& [idx, val] : rows[static_cast<std::size_t>(i)].feats) {
      x(i, idx - 1) = val;
    }
    for (long lbl : rows[static_cast<std::size_t>(i)].labels) {
      y(i, lbl - 1) = 1.0;
    }
  }
  Dataset ds = Dataset::from_xy(std::move(x), std::move(y));
  validate_dataset(ds);
  return ds;
}

std::string format_shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf, ptr);
}

} // namespace

Dataset read_dataset(std::istream& in, DataFormat format,
                     const std::string& origin) {
  switch (format) {
    case DataFormat::DenseCsv:
      return read_dense_csv(in, origin);
    case DataFormat::SparseMll:
      return read_sparse_mll(in, origin);
  }
  throw ParseError("unhandled dataset format");
}

Dataset load_dataset(const std::string& path, DataFormat format) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open dataset file '" + path + "'");
  }
  return read_dataset(in, format, path);
}

void write_dataset(const Dataset& ds, std::ostream& out) {
  out << "#mll n=" << ds.rows() << " m=" << ds.feature_count()
      << " l=" << ds.label_count() << "\n";
  for (Index i = 0; i < ds.rows(); ++i) {
    for (Index j = 0; j < ds.feature_count(); ++j) {
      if (j) out << ',';
      out << format_shortest(ds.features(i, j));
    }
    for (Index j = 0; j < ds.label_count(); ++j) {
      out << ',' << (ds.labels(i, j) > 0 ? "+1" : "-1");
    }
    out << "\n";
  }
}

void write_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  write_dataset(ds, out);
}

void validate_split_plan(const SplitPlan& plan) {
  if (!(plan.train_fraction > 0.0 && plan.train_fraction < 1.0)) {
    throw ValidationError("train_fraction must lie strictly in (0,1)");
  }
  if (plan.repeats < 1) {
    throw ValidationError("repeats must be positive");
  }
}

Dataset take_rows(const Dataset& ds, const std::vector<Index>& rows) {
  Matrix x(static_cast<Index>(rows.size()), ds.feature_count());
  Matrix y(static_cast<Index>(rows.size()), ds.label_count());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Index>(i)) = ds.features.row(rows[i]);
    y.row(static_cast<Index>(i)) = ds.labels.row(rows[i]);
  }
  return Dataset::from_xy(std::move(x), std::move(y));
}

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitPlan& plan,
                                  int repeat_index) {
  validate_split_plan(plan);
  if (repeat_index < 0 || repeat_index >= plan.repeats) {
    throw ValidationError("repeat_index " + std::to_string(repeat_index) +
                          " outside [0," + std::to_string(plan.repeats) + ")");
  }
  std::vector<Index> order(static_cast<std::size_t>(ds.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  SplitMix64 rng(mix_seed(plan.seed, static_cast<std::uint64_t>(repeat_index)));
  shuffle_indices(order, rng);

  const auto train_count = static_cast<std::size_t>(std::ceil(
      plan.train_fraction * static_cast<double>(ds.rows())));
  std::vector<Index> train_rows(order.begin(),
                                order.begin() + static_cast<long>(train_count));
  std::vector<Index> test_rows(order.begin() + static_cast<long>(train_count),
                               order.end());
  return {take_rows(ds, train_rows), take_rows(ds, test_rows)};
}

std::vector<std::pair<Dataset, Dataset>> kfold(const Dataset& ds, int k,
                                               std::uint64_t seed) {
  if (k < 2) {
    throw TooFewRows("kfold needs k >= 2, got " + std::to_string(k));
  }
  if (static_cast<Index>(k) > ds.rows()) {
    throw TooFewRows("kfold with k=" + std::to_string(k) + " needs at least " +
                     std::to_string(k) + " rows, dataset has " +
                     std::to_string(ds.rows()));
  }
  std::vector<Index> order(static_cast<std::size_t>(ds.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  SplitMix64 rng(mix_seed(seed, 0x6b666f6c64ULL)); // "kfold"
  shuffle_indices(order, rng);

  const std::size_t n = order.size();
  const std::size_t base = n / static_cast<std::size_t>(k);
  const std::size_t extra = n % static_cast<std::size_t>(k);
  std::vector<std::pair<Dataset, Dataset>> folds;
  folds.reserve(static_cast<std::size_t>(k));
  std::size_t start = 0;
  for (int f = 0; f < k; ++f) {
    const std::size_t size = base + (static_cast<std::size_t>(f) < extra);
    std::vector<Index> val_rows(order.begin() + static_cast<long>(start),
                                order.begin() +
                                    static_cast<long>(start + size));
    std::vector<Index> train_rows;
    train_rows.reserve(n - size);
    train_rows.insert(train_rows.end(), order.begin(),
                      order.begin() + static_cast<long>(start));
    train_rows.insert(train_rows.end(),
                      order.begin() + static_cast<long>(start + size),
                      order.end());
    folds.emplace_back(take_rows(ds, train_rows), take_rows(ds, val_rows));
    start += size;
  }
  return folds;
}

} // namespace rbrl
