#include "reactline/wim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include "reactline/text.hpp"

namespace reactline {

double VehicleRecord::gvw() const {
  double s = 0.0;
  for (double w : axle_weights_kn) s += w;
  return s;
}

double VehicleRecord::heaviest_axle() const {
  double m = 0.0;
  for (double w : axle_weights_kn) m = std::max(m, w);
  return m;
}

const char* to_string(FlagReason reason) {
  switch (reason) {
    case FlagReason::BadCount: return "bad-count";
    case FlagReason::NonpositiveWeight: return "nonpositive-weight";
    case FlagReason::NonpositiveSpacing: return "nonpositive-spacing";
    case FlagReason::GvwMismatch: return "gvw-mismatch";
  }
  return "unknown";
}

namespace {

constexpr int kMinAxles = 2;
constexpr int kMaxAxles = 13;

// Column plan derived from the header row. w and s columns must be the
// contiguous runs w1..wK and s1..s(K-1); id and axle_count are required;
// gvw, timestamp and lane are the only optional extras.
struct HeaderPlan {
  int n_cols = 0;
  int col_id = -1;
  int col_axle_count = -1;
  int col_gvw = -1;
  int col_timestamp = -1;
  int col_lane = -1;
  std::vector<int> col_w;  // col_w[i] = column of w(i+1)
  std::vector<int> col_s;
};

[[noreturn]] void bad_header(const std::string& msg) {
  throw std::runtime_error("malformed header: " + msg);
}

// Parses "w12" style names; returns 0 when the suffix is not a plain index.
int indexed_name(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix) return 0;
  int idx = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    idx = idx * 10 + (name[i] - '0');
    if (idx > 1000) return 0;
  }
  return idx;
}

HeaderPlan parse_header(const std::string& line) {
  HeaderPlan plan;
  std::vector<std::string> cells = split_csv_line(line);
  plan.n_cols = static_cast<int>(cells.size());

  std::map<int, int> w_cols, s_cols;
  for (int c = 0; c < plan.n_cols; ++c) {
    std::string name = trim(cells[static_cast<std::size_t>(c)]);
    int* slot = nullptr;
    if (name == "id") slot = &plan.col_id;
    else if (name == "axle_count") slot = &plan.col_axle_count;
    else if (name == "gvw") slot = &plan.col_gvw;
    else if (name == "timestamp") slot = &plan.col_timestamp;
    else if (name == "lane") slot = &plan.col_lane;
    if (slot) {
      if (*slot != -1) bad_header("duplicate column \"" + name + "\"");
      *slot = c;
      continue;
    }
    if (int wi = indexed_name(name, 'w'); wi > 0) {
      if (!w_cols.emplace(wi, c).second) bad_header("duplicate column \"" + name + "\"");
      continue;
    }
    if (int si = indexed_name(name, 's'); si > 0) {
      if (!s_cols.emplace(si, c).second) bad_header("duplicate column \"" + name + "\"");
      continue;
    }
    bad_header("unknown column \"" + name + "\"");
  }

  if (plan.col_id == -1) bad_header("missing \"id\"");
  if (plan.col_axle_count == -1) bad_header("missing \"axle_count\"");
  int k = static_cast<int>(w_cols.size());
  if (k < kMinAxles) bad_header("needs w1..wK columns for at least two axles");
  for (int i = 1; i <= k; ++i) {
    auto it = w_cols.find(i);
    if (it == w_cols.end()) bad_header("weight columns are not contiguous at w" + std::to_string(i));
    plan.col_w.push_back(it->second);
  }
  if (static_cast<int>(s_cols.size()) != k - 1) {
    bad_header("expected " + std::to_string(k - 1) + " spacing columns for w1..w" +
               std::to_string(k));
  }
  for (int i = 1; i <= k - 1; ++i) {
    auto it = s_cols.find(i);
    if (it == s_cols.end()) bad_header("spacing columns are not contiguous at s" + std::to_string(i));
    plan.col_s.push_back(it->second);
  }
  return plan;
}

struct RowOutcome {
  bool ok = false;
  std::int64_t id = -1;
  FlagReason reason = FlagReason::BadCount;
};

// Fills `rec` from one data row. Never throws: every defect maps to a flag
// reason so a dirty row cannot abort the file.
RowOutcome parse_row(const HeaderPlan& plan, const std::vector<std::string>& cells,
                     VehicleRecord& rec) {
  RowOutcome out;
  if (static_cast<int>(cells.size()) != plan.n_cols) return out;

  auto cell = [&](int c) { return trim(cells[static_cast<std::size_t>(c)]); };

  try {
    out.id = parse_int(cell(plan.col_id));
  } catch (const std::exception&) {
    return out;
  }

  std::int64_t count = 0;
  try {
    count = parse_int(cell(plan.col_axle_count));
  } catch (const std::exception&) {
    return out;
  }
  if (count < kMinAxles || count > kMaxAxles ||
      count > static_cast<std::int64_t>(plan.col_w.size())) {
    return out;
  }
  int k = static_cast<int>(count);

  rec = VehicleRecord{};
  rec.id = out.id;
  rec.axle_weights_kn.reserve(static_cast<std::size_t>(k));
  rec.axle_spacings_m.reserve(static_cast<std::size_t>(k) - 1);

  // Cells for axles the record does not have must stay empty; a stray value
  // there means the declared count is wrong.
  for (std::size_t i = 0; i < plan.col_w.size(); ++i) {
    std::string v = cell(plan.col_w[i]);
    if (i < static_cast<std::size_t>(k)) {
      if (v.empty()) return out;
      try {
        rec.axle_weights_kn.push_back(parse_double(v));
      } catch (const std::exception&) {
        return out;
      }
    } else if (!v.empty()) {
      return out;
    }
  }
  for (std::size_t i = 0; i < plan.col_s.size(); ++i) {
    std::string v = cell(plan.col_s[i]);
    if (i + 1 < static_cast<std::size_t>(k)) {
      if (v.empty()) return out;
      try {
        rec.axle_spacings_m.push_back(parse_double(v));
      } catch (const std::exception&) {
        return out;
      }
    } else if (!v.empty()) {
      return out;
    }
  }

  for (double w : rec.axle_weights_kn) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      out.reason = FlagReason::NonpositiveWeight;
      return out;
    }
  }
  for (double s : rec.axle_spacings_m) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      out.reason = FlagReason::NonpositiveSpacing;
      return out;
    }
  }

  if (plan.col_gvw != -1) {
    std::string v = cell(plan.col_gvw);
    if (!v.empty()) {
      double claimed = 0.0;
      try {
        claimed = parse_double(v);
      } catch (const std::exception&) {
        return out;  // unreadable checksum cell: structural
      }
      double actual = rec.gvw();
      if (std::fabs(claimed - actual) > 0.01 * actual) {
        out.reason = FlagReason::GvwMismatch;
        return out;
      }
    }
  }

  if (plan.col_timestamp != -1) rec.timestamp = cell(plan.col_timestamp);
  if (plan.col_lane != -1) rec.lane = cell(plan.col_lane);

  out.ok = true;
  return out;
}

}  // namespace

ParseResult parse_wim(std::istream& in) {
  if (!in) throw std::runtime_error("wim parse: unreadable stream");

  ParseResult result;
  std::string line;
  long long line_no = 0;
  bool have_header = false;
  HeaderPlan plan;

  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (!have_header) {
      plan = parse_header(t);
      have_header = true;
      continue;
    }
    ++result.report.records_total;
    std::vector<std::string> cells = split_csv_line(line);
    VehicleRecord rec;
    RowOutcome out = parse_row(plan, cells, rec);
    if (out.ok) {
      ++result.report.records_accepted;
      result.records.push_back(std::move(rec));
    } else {
      result.report.flagged.push_back({line_no, out.id, out.reason});
    }
  }
  if (in.bad()) throw std::runtime_error("wim parse: read failure");
  if (!have_header) throw std::runtime_error("malformed header: empty input");
  return result;
}

ParseResult parse_wim_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("wim parse: cannot open " + path);
  return parse_wim(in);
}

void serialize_wim(const std::vector<VehicleRecord>& records, std::ostream& out) {
  int k = kMinAxles;
  bool has_ts = false, has_lane = false;
  for (const VehicleRecord& r : records) {
    k = std::max(k, r.axle_count());
    has_ts = has_ts || !r.timestamp.empty();
    has_lane = has_lane || !r.lane.empty();
  }
  auto check_tag = [](const std::string& tag) {
    if (tag.find(',') != std::string::npos || tag.find('\n') != std::string::npos) {
      throw std::runtime_error("wim serialize: tag contains a separator: " + tag);
    }
  };

  out << "id,axle_count";
  for (int i = 1; i <= k; ++i) out << ",w" << i;
  for (int i = 1; i <= k - 1; ++i) out << ",s" << i;
  if (has_ts) out << ",timestamp";
  if (has_lane) out << ",lane";
  out << "\n";

  for (const VehicleRecord& r : records) {
    out << r.id << "," << r.axle_count();
    for (int i = 0; i < k; ++i) {
      out << ",";
      if (i < r.axle_count()) out << format_double(r.axle_weights_kn[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < k - 1; ++i) {
      out << ",";
      if (i < r.axle_count() - 1) out << format_double(r.axle_spacings_m[static_cast<std::size_t>(i)]);
    }
    if (has_ts) {
      check_tag(r.timestamp);
      out << "," << r.timestamp;
    }
    if (has_lane) {
      check_tag(r.lane);
      out << "," << r.lane;
    }
    out << "\n";
  }
}

AxleTrain to_train(const VehicleRecord& record, TravelDirection direction) {
  AxleTrain t;
  t.loads_kn = record.axle_weights_kn;
  t.spacings_m = record.axle_spacings_m;
  if (direction == TravelDirection::Reverse) return t.reversed();
  return t;
}

double gvw_percentile(const std::vector<VehicleRecord>& records, double p) {
  if (records.empty()) throw std::invalid_argument("percentile of an empty record set");
  if (!(p >= 0.0) || p > 100.0) throw std::invalid_argument("percentile must be in [0, 100]");
  std::vector<double> gvws;
  gvws.reserve(records.size());
  for (const VehicleRecord& r : records) gvws.push_back(r.gvw());
  std::sort(gvws.begin(), gvws.end());
  auto n = static_cast<long long>(gvws.size());
  auto rank = static_cast<long long>(std::ceil(p / 100.0 * static_cast<double>(n)));
  rank = std::clamp(rank, 1ll, n);
  return gvws[static_cast<std::size_t>(rank - 1)];
}

std::vector<VehicleRecord> filter_above(const std::vector<VehicleRecord>& records,
                                        double threshold_kn) {
  std::vector<VehicleRecord> out;
  for (const VehicleRecord& r : records) {
    if (r.gvw() > threshold_kn) out.push_back(r);
  }
  return out;
}

namespace {

struct Accum {
  long long n = 0;
  double sum_g = 0.0, sum_g2 = 0.0;
  double sum_h = 0.0, sum_h2 = 0.0;

  void add(double g, double h) {
    ++n;
    sum_g += g;
    sum_g2 += g * g;
    sum_h += h;
    sum_h2 += h * h;
  }

  StatsRow finish(int axle_class, bool sample_sigma) const {
    StatsRow row;
    row.axle_class = axle_class;
    row.count = n;
    double dn = static_cast<double>(n);
    row.mean_gvw = sum_g / dn;
    row.mean_heaviest = sum_h / dn;
    double div = sample_sigma ? dn - 1.0 : dn;
    if (div > 0.0) {
      // Guard against tiny negative residue when all values coincide.
      row.sd_gvw = std::sqrt(std::max(0.0, (sum_g2 - dn * row.mean_gvw * row.mean_gvw) / div));
      row.sd_heaviest =
          std::sqrt(std::max(0.0, (sum_h2 - dn * row.mean_heaviest * row.mean_heaviest) / div));
    }
    return row;
  }
};

}  // namespace

StatsTable summary_stats(const std::vector<VehicleRecord>& records, bool sample_sigma) {
  if (records.empty()) throw std::invalid_argument("stats of an empty record set");
  std::map<int, Accum> per_class;
  Accum all;
  for (const VehicleRecord& r : records) {
    double g = r.gvw();
    double h = r.heaviest_axle();
    per_class[r.axle_count()].add(g, h);
    all.add(g, h);
  }
  StatsTable table;
  for (const auto& [klass, acc] : per_class) {
    table.rows.push_back(acc.finish(klass, sample_sigma));
  }
  table.rows.push_back(all.finish(0, sample_sigma));
  return table;
}

std::vector<HistBin> gvw_histogram(const std::vector<VehicleRecord>& records,
                                   double bin_width_kn) {
  if (!(bin_width_kn > 0.0)) throw std::invalid_argument("histogram bin width must be positive");
  if (records.empty()) return {};

  std::map<long long, long long> counts;
  for (const VehicleRecord& r : records) {
    auto bin = static_cast<long long>(std::floor(r.gvw() / bin_width_kn));
    ++counts[bin];
  }
  std::vector<HistBin> out;
  long long lo = counts.begin()->first;
  long long hi = counts.rbegin()->first;
  for (long long b = lo; b <= hi; ++b) {
    auto it = counts.find(b);
    out.push_back({static_cast<double>(b) * bin_width_kn, it == counts.end() ? 0 : it->second});
  }
  return out;
}

std::uint64_t fleet_fingerprint(const std::vector<VehicleRecord>& records) {
  std::uint64_t h = fnv1a64("wim-fleet-v1");
  for (const VehicleRecord& r : records) {
    h = fnv1a64(std::to_string(r.id), h);
    h = fnv1a64("|", h);
    for (double w : r.axle_weights_kn) {
      h = fnv1a64(format_double(w), h);
      h = fnv1a64(",", h);
    }
    h = fnv1a64("|", h);
    for (double s : r.axle_spacings_m) {
      h = fnv1a64(format_double(s), h);
      h = fnv1a64(",", h);
    }
    h = fnv1a64(";", h);
  }
  return h;
}

}  // namespace reactline
