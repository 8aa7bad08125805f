#include "dnc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dnc/rng.hpp"

namespace dnc {
namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

// Splits one CSV line into fields, RFC-4180 quoting ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      if (!cur.empty()) {
        throw std::runtime_error("movies.csv line " + std::to_string(line_no) +
                                 ": stray quote");
      }
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    throw std::runtime_error("movies.csv line " + std::to_string(line_no) +
                             ": unterminated quote");
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::vector<MovieRecord> parse_movies_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("parse_movies_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("parse_movies_csv: empty file " + path);
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "movieId,title,genres") {
    throw std::runtime_error("parse_movies_csv: unexpected header '" + line + "'");
  }

  std::vector<MovieRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line, line_no);
    if (fields.size() != 3) {
      throw std::runtime_error("movies.csv line " + std::to_string(line_no) +
                               ": expected 3 fields, got " + std::to_string(fields.size()));
    }
    MovieRecord rec;
    try {
      rec.movie_id = std::stol(fields[0]);
    } catch (const std::exception&) {
      throw std::runtime_error("movies.csv line " + std::to_string(line_no) +
                               ": bad movie id '" + fields[0] + "'");
    }
    rec.title = fields[1];
    std::stringstream genres(fields[2]);
    std::string token;
    while (std::getline(genres, token, '|')) {
      if (!token.empty()) rec.genres.push_back(token);
    }
    if (rec.genres.empty()) {
      throw std::runtime_error("movies.csv line " + std::to_string(line_no) +
                               ": empty genre list");
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<std::string> genre_vocabulary(const std::vector<MovieRecord>& records) {
  std::set<std::string> vocab;
  for (const MovieRecord& r : records) {
    vocab.insert(r.genres.begin(), r.genres.end());
  }
  return {vocab.begin(), vocab.end()};
}

Mat64 tfidf_vectorize(const std::vector<MovieRecord>& records) {
  if (records.empty()) throw std::invalid_argument("tfidf_vectorize: no records");
  const std::vector<std::string> vocab = genre_vocabulary(records);
  if (vocab.empty()) throw std::invalid_argument("tfidf_vectorize: empty vocabulary");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vocab.size(); ++i) index[vocab[i]] = i;

  // Document frequency per token.
  std::vector<double> df(vocab.size(), 0.0);
  {
    std::set<std::size_t> seen;
    for (const MovieRecord& r : records) {
      seen.clear();
      for (const std::string& g : r.genres) seen.insert(index.at(g));
      for (std::size_t i : seen) df[i] += 1.0;
    }
  }
  const double n_docs = static_cast<double>(records.size());
  std::vector<double> idf(vocab.size());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    idf[i] = std::log((1.0 + n_docs) / (1.0 + df[i])) + 1.0;
  }

  Mat64 out(records.size(), vocab.size());
  const long n = static_cast<long>(records.size());
#pragma omp parallel for schedule(static)
  for (long r = 0; r < n; ++r) {
    double* row = out.row(static_cast<std::size_t>(r));
    for (const std::string& g : records[static_cast<std::size_t>(r)].genres) {
      row[index.at(g)] += 1.0;
    }
    double norm2 = 0.0;
    for (std::size_t c = 0; c < vocab.size(); ++c) {
      row[c] *= idf[c];
      norm2 += row[c] * row[c];
    }
    const double norm = std::sqrt(norm2);
    for (std::size_t c = 0; c < vocab.size(); ++c) {
      row[c] = round2(row[c] / norm);
    }
  }
  return out;
}

Mat64 dedupe_rows(const Mat64& m) {
  std::vector<std::size_t> keep;
  std::set<std::vector<double>> seen;
  std::vector<double> row(m.cols);
  for (std::size_t i = 0; i < m.rows; ++i) {
    row.assign(m.row(i), m.row(i) + m.cols);
    if (seen.insert(row).second) keep.push_back(i);
  }
  Mat64 out(keep.size(), m.cols);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const double* src = m.row(keep[i]);
    std::copy(src, src + m.cols, out.row(i));
  }
  return out;
}

double cosine_similarity(const Vec64& a, const Vec64& b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) {
    throw std::invalid_argument("cosine_similarity: zero vector");
  }
  return dot(a, b) / (na * nb);
}

double pick_probability(double s) { return 1.0 / (1.0 + std::exp(-5.0 * s)); }

Vec64 assign_tier_rewards(std::size_t n_rows) {
  const std::size_t n_top = n_rows / 10;             // last 10% -> 30
  const std::size_t n_mid = (3 * n_rows) / 10;       // next 30% -> 10
  const std::size_t n_low = n_rows - n_mid - n_top;  // first 60% (plus remainder) -> 1
  Vec64 rewards(n_rows);
  for (std::size_t i = 0; i < n_rows; ++i) {
    rewards[i] = i < n_low ? 1.0 : (i < n_low + n_mid ? 10.0 : 30.0);
  }
  return rewards;
}

Catalog synthetic_catalog(std::uint64_t seed, std::size_t n_rows, std::size_t n_features) {
  if (n_rows < 1 || n_features < 1) {
    throw std::invalid_argument("synthetic_catalog: need at least 1 row and feature");
  }
  Rng rng(seed, 0x5ca7a106);
  Mat64 rows(n_rows, n_features);
  const std::size_t max_active = std::min<std::size_t>(4, n_features);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double* row = rows.row(i);
    const std::size_t active = 1 + rng.uniform_index(max_active);
    double norm2 = 0.0;
    for (std::size_t k = 0; k < active; ++k) {
      const std::size_t f = rng.uniform_index(n_features);
      if (row[f] == 0.0) {
        row[f] = rng.uniform(0.2, 1.0);
        norm2 += row[f] * row[f];
      }
    }
    if (norm2 == 0.0) {
      row[0] = 1.0;
      norm2 = 1.0;
    }
    const double norm = std::sqrt(norm2);
    for (std::size_t f = 0; f < n_features; ++f) row[f] = round2(row[f] / norm);
  }
  Catalog cat;
  cat.features = dedupe_rows(rows);
  cat.item_rewards = assign_tier_rewards(cat.features.rows);
  return cat;
}

void save_catalog_csv(const Catalog& catalog, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw std::runtime_error("save_catalog_csv: cannot write " + path);
  for (std::size_t c = 0; c < catalog.features.cols; ++c) {
    std::fprintf(f, "f%zu,", c);
  }
  std::fprintf(f, "reward\n");
  for (std::size_t r = 0; r < catalog.features.rows; ++r) {
    const double* row = catalog.features.row(r);
    for (std::size_t c = 0; c < catalog.features.cols; ++c) {
      std::fprintf(f, "%.2f,", row[c]);
    }
    std::fprintf(f, "%.0f\n", catalog.item_rewards[r]);
  }
  std::fclose(f);
}

Catalog load_catalog_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_catalog_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("load_catalog_csv: empty file " + path);
  }
  const std::size_t n_cols = static_cast<std::size_t>(
      std::count(line.begin(), line.end(), ',') + 1);
  if (n_cols < 2) throw std::runtime_error("load_catalog_csv: bad header");
  const std::size_t n_features = n_cols - 1;

  std::vector<double> values;
  Vec64 rewards;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ss, cell, ',')) {
      const double v = std::stod(cell);
      if (c < n_features) {
        values.push_back(v);
      } else {
        rewards.push_back(v);
      }
      ++c;
    }
    if (c != n_cols) throw std::runtime_error("load_catalog_csv: ragged row");
  }
  Catalog cat;
  cat.features.rows = rewards.size();
  cat.features.cols = n_features;
  cat.features.values = std::move(values);
  cat.item_rewards = std::move(rewards);
  return cat;
}

std::uint64_t fnv1a_file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("fnv1a_file_hash: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

namespace {
constexpr char kCacheMagic[8] = {'D', 'N', 'C', 'C', 'A', 'T', '1', '\0'};
}

void save_catalog_cache(const Catalog& catalog, std::uint64_t source_hash,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_catalog_cache: cannot write " + path);
  out.write(kCacheMagic, sizeof(kCacheMagic));
  const std::uint64_t rows = catalog.features.rows;
  const std::uint64_t cols = catalog.features.cols;
  out.write(reinterpret_cast<const char*>(&source_hash), sizeof(source_hash));
  out.write(reinterpret_cast<const char*>(&rows), sizeof(rows));
  out.write(reinterpret_cast<const char*>(&cols), sizeof(cols));
  out.write(reinterpret_cast<const char*>(catalog.features.values.data()),
            static_cast<std::streamsize>(sizeof(double) * catalog.features.values.size()));
  out.write(reinterpret_cast<const char*>(catalog.item_rewards.data()),
            static_cast<std::streamsize>(sizeof(double) * catalog.item_rewards.size()));
}

bool load_catalog_cache(const std::string& path, std::uint64_t source_hash,
                        Catalog& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  std::uint64_t hash = 0, rows = 0, cols = 0;
  in.read(magic, sizeof(magic));
  in.read(reinterpret_cast<char*>(&hash), sizeof(hash));
  in.read(reinterpret_cast<char*>(&rows), sizeof(rows));
  in.read(reinterpret_cast<char*>(&cols), sizeof(cols));
  if (!in || std::memcmp(magic, kCacheMagic, sizeof(magic)) != 0 || hash != source_hash) {
    return false;
  }
  Catalog cat;
  cat.features = Mat64(rows, cols);
  cat.item_rewards.resize(rows);
  in.read(reinterpret_cast<char*>(cat.features.values.data()),
          static_cast<std::streamsize>(sizeof(double) * cat.features.values.size()));
  in.read(reinterpret_cast<char*>(cat.item_rewards.data()),
          static_cast<std::streamsize>(sizeof(double) * cat.item_rewards.size()));
  if (!in) return false;
  out = std::move(cat);
  return true;
}

IngestStats ingest_movies(const std::string& movies_csv, const std::string& out_csv) {
  IngestStats stats;
  const std::uint64_t hash = fnv1a_file_hash(movies_csv);
  const std::string cache_path = out_csv + ".bin";

  Catalog cat;
  if (load_catalog_cache(cache_path, hash, cat)) {
    stats.from_cache = true;
  } else {
    const auto records = parse_movies_csv(movies_csv);
    stats.n_records = records.size();
    const Mat64 tfidf = tfidf_vectorize(records);
    cat.features = dedupe_rows(tfidf);
    cat.item_rewards = assign_tier_rewards(cat.features.rows);
    save_catalog_cache(cat, hash, cache_path);
  }
  stats.n_features = cat.features.cols;
  stats.n_unique_rows = cat.features.rows;
  save_catalog_csv(cat, out_csv);
  return stats;
}

}  // namespace dnc
