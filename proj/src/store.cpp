#include "billiard/store.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "billiard/errors.hpp"
#include "billiard/linearization.hpp"
#include "billiard/symbolic.hpp"

namespace billiard {

namespace {

constexpr const char* kFormatTag = "open-billiard-spectrum v1";

std::string rows_region(const SpectrumDB& db) {
  std::string out;
  for (const SpectrumRow& row : db.rows) {
    out += word_to_string(row.word, db.kappa0);
    out += ',';
    out += std::to_string(row.m);
    out += ',';
    out += format_g17(row.length);
    out += ',';
    out += format_g17(row.lambda_u);
    out += ',';
    out += format_g17(row.det_factor);
    out += ',';
    out += format_g17(row.residual);
    out += '\n';
  }
  return out;
}

SpectrumRow solve_row(const ObstacleSystem& system, const Necklace& necklace,
                      const SolveOptions& options) {
  const Orbit orbit = solve_cycle(system, necklace, options);
  const StabilityData stab = poincare_map(system, orbit);
  SpectrumRow row;
  row.word = necklace.word;
  row.m = necklace.period();
  row.length = orbit.length;
  row.lambda_u = stab.lambda_u;
  row.det_factor = stab.det_factor;
  row.residual = orbit.gradient_residual;
  return row;
}

// Solves the given necklaces in parallel; output order matches input order.
std::vector<SpectrumRow> solve_all(const ObstacleSystem& system,
                                   const std::vector<Necklace>& necklaces,
                                   int threads, const SolveOptions& options) {
  std::vector<SpectrumRow> rows(necklaces.size());
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= necklaces.size() || failed.load()) break;
      try {
        rows[i] = solve_row(system, necklaces[i], options);
      } catch (const std::exception& e) {
        std::scoped_lock lock(error_mutex);
        if (!failed.exchange(true)) first_error = e.what();
      }
    }
  };

  const int nthreads = std::max(1, threads);
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw SolverError("spectrum build aborted: " + first_error);
  return rows;
}

}  // namespace

std::span<const SpectrumRow> SpectrumDB::rows_at(int m) const {
  auto lo = std::lower_bound(rows.begin(), rows.end(), m,
                             [](const SpectrumRow& r, int v) { return r.m < v; });
  auto hi = std::upper_bound(rows.begin(), rows.end(), m,
                             [](int v, const SpectrumRow& r) { return v < r.m; });
  return {rows.data() + (lo - rows.begin()), static_cast<std::size_t>(hi - lo)};
}

std::string SpectrumDB::serialize() const {
  const std::string region = rows_region(*this);
  std::string out;
  out += std::string("# ") + kFormatTag + "\n";
  out += "# geometry_hash=" + to_hex(geometry_hash) + "\n";
  out += "# kappa0=" + std::to_string(kappa0) + "\n";
  out += "# n_max=" + std::to_string(n_max) + "\n";
  out += "# rows=" + std::to_string(rows.size()) + "\n";
  out += "# checksum=" + to_hex(fnv1a64(region)) + "\n";
  out += "word,m,T,lambda_u,det_factor,residual\n";
  out += region;
  return out;
}

void SpectrumDB::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write spectrum file: " + path);
  out << serialize();
}

SpectrumDB SpectrumDB::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  SpectrumDB db;
  std::size_t declared_rows = 0;
  std::uint64_t declared_checksum = 0;
  bool have_tag = false;

  auto header_value = [](const std::string& l, const std::string& key,
                         std::string& out) {
    const std::string prefix = "# " + key + "=";
    if (l.rfind(prefix, 0) != 0) return false;
    out = l.substr(prefix.size());
    return true;
  };

  // Header block.
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
    std::string v;
    if (line == std::string("# ") + kFormatTag) have_tag = true;
    else if (header_value(line, "geometry_hash", v))
      db.geometry_hash = std::stoull(v, nullptr, 16);
    else if (header_value(line, "kappa0", v)) db.kappa0 = std::stoi(v);
    else if (header_value(line, "n_max", v)) db.n_max = std::stoi(v);
    else if (header_value(line, "rows", v)) declared_rows = std::stoull(v);
    else if (header_value(line, "checksum", v))
      declared_checksum = std::stoull(v, nullptr, 16);
  }
  if (!have_tag) throw ParseError("missing spectrum format tag");
  if (line != "word,m,T,lambda_u,det_factor,residual")
    throw ParseError("missing column header line");

  std::string region;
  std::size_t row_number = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row_number;
    region += line;
    region += '\n';
    std::istringstream cells(line);
    std::string cell;
    std::vector<std::string> parts;
    while (std::getline(cells, cell, ',')) parts.push_back(cell);
    if (parts.size() != 6)
      throw ParseError("malformed spectrum row " + std::to_string(row_number) +
                       ": " + line);
    SpectrumRow row;
    try {
      row.word = word_from_string(parts[0], db.kappa0);
      row.m = std::stoi(parts[1]);
      row.length = std::stod(parts[2]);
      row.lambda_u = std::stod(parts[3]);
      row.det_factor = std::stod(parts[4]);
      row.residual = std::stod(parts[5]);
    } catch (const std::exception&) {
      throw ParseError("malformed spectrum row " + std::to_string(row_number) +
                       ": " + line);
    }
    if (row.m != static_cast<int>(row.word.size()))
      throw ParseError("word/m mismatch at row " + std::to_string(row_number));
    db.rows.push_back(std::move(row));
  }

  if (db.rows.size() != declared_rows)
    throw ParseError("row count mismatch: header declares " +
                     std::to_string(declared_rows) + ", found " +
                     std::to_string(db.rows.size()) + " (file truncated after row " +
                     std::to_string(db.rows.size()) + "?)");
  if (fnv1a64(region) != declared_checksum)
    throw ParseError("rows checksum mismatch");

  for (std::size_t i = 0; i + 1 < db.rows.size(); ++i) {
    const auto& a = db.rows[i];
    const auto& b = db.rows[i + 1];
    if (a.m > b.m || (a.m == b.m && !(a.word < b.word)))
      throw ParseError("rows out of order or duplicated at row " +
                       std::to_string(i + 2));
  }
  for (int m = 2; m <= db.n_max; ++m) {
    const auto span = db.rows_at(m);
    const auto expected = necklace_count(db.kappa0, m);
    if (static_cast<std::int64_t>(span.size()) != expected)
      throw ParseError("census incomplete at word length " + std::to_string(m) +
                       ": " + std::to_string(span.size()) + " rows, expected " +
                       std::to_string(expected));
  }
  return db;
}

SpectrumDB SpectrumDB::load(const std::string& path,
                            const ObstacleSystem& system) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open spectrum file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  SpectrumDB db = deserialize(buf.str());
  if (db.geometry_hash != system.geometry_hash())
    throw ConfigError("spectrum file was built for a different geometry "
                      "(stale cache rejected)");
  if (db.kappa0 != system.size())
    throw ConfigError("spectrum kappa0 mismatch");
  return db;
}

SpectrumDB build_spectrum(const ObstacleSystem& system, int n_max, int threads,
                          const SolveOptions& options) {
  if (n_max < 2) throw DomainError("spectrum requires n_max >= 2");
  SpectrumDB db;
  db.geometry_hash = system.geometry_hash();
  db.kappa0 = system.size();
  db.n_max = n_max;

  std::vector<Necklace> necklaces;
  for (int m = 2; m <= n_max; ++m) {
    auto batch = enumerate_necklaces(system.size(), m);
    necklaces.insert(necklaces.end(), batch.begin(), batch.end());
  }
  db.rows = solve_all(system, necklaces, threads, options);
  return db;
}

SpectrumDB extend_spectrum(const SpectrumDB& base, const ObstacleSystem& system,
                           int n_max, int threads,
                           const SolveOptions& options) {
  if (base.geometry_hash != system.geometry_hash())
    throw ConfigError("cannot extend a spectrum built for a different geometry");
  if (n_max <= base.n_max) return base;

  SpectrumDB db = base;
  db.n_max = n_max;
  std::vector<Necklace> necklaces;
  for (int m = base.n_max + 1; m <= n_max; ++m) {
    auto batch = enumerate_necklaces(system.size(), m);
    necklaces.insert(necklaces.end(), batch.begin(), batch.end());
  }
  auto fresh = solve_all(system, necklaces, threads, options);
  db.rows.insert(db.rows.end(), fresh.begin(), fresh.end());
  return db;
}

}  // namespace billiard
