#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dnc/linalg.hpp"

namespace dnc {

struct MovieRecord {
  long movie_id = 0;
  std::string title;
  std::vector<std::string> genres;  // '|'-separated tokens, never empty
};

// Item catalog backing the recommender environment: unique tf-idf feature
// rows on a 0.01 grid plus tiered per-item rewards.
struct Catalog {
  Mat64 features;
  Vec64 item_rewards;
};

// Parses a MovieLens-style movies.csv (header `movieId,title,genres`,
// RFC-4180 quoting). Malformed rows raise with their line number.
std::vector<MovieRecord> parse_movies_csv(const std::string& path);

// Genre-token tf-idf: vocabulary = sorted distinct tokens, smoothed idf
// ln((1+D)/(1+df)) + 1, L2-normalized rows, entries rounded to 2 decimals.
Mat64 tfidf_vectorize(const std::vector<MovieRecord>& records);

// Sorted distinct genre tokens (the tf-idf columns).
std::vector<std::string> genre_vocabulary(const std::vector<MovieRecord>& records);

// Keeps the first occurrence of each distinct row, preserving order.
Mat64 dedupe_rows(const Mat64& m);

double cosine_similarity(const Vec64& a, const Vec64& b);

// Probability that a recommendation with similarity s is picked:
// 1 / (1 + exp(-5 s)).
double pick_probability(double s);

// Rewards 1 / 10 / 30 assigned to the first 60%, next 30%, and last 10% of
// rows by index; remainders fall to the lowest tier.
Vec64 assign_tier_rewards(std::size_t n_rows);

// Deterministic sparse synthetic catalog for dataset-free tests.
Catalog synthetic_catalog(std::uint64_t seed, std::size_t n_rows, std::size_t n_features);

// Full ingestion pipeline. If a binary cache next to `out_csv` matches the
// input file hash the cached result is reused.
struct IngestStats {
  std::size_t n_records = 0;
  std::size_t n_features = 0;
  std::size_t n_unique_rows = 0;
  bool from_cache = false;
};
IngestStats ingest_movies(const std::string& movies_csv, const std::string& out_csv);

void save_catalog_csv(const Catalog& catalog, const std::string& path);
Catalog load_catalog_csv(const std::string& path);

std::uint64_t fnv1a_file_hash(const std::string& path);
void save_catalog_cache(const Catalog& catalog, std::uint64_t source_hash,
                        const std::string& path);
bool load_catalog_cache(const std::string& path, std::uint64_t source_hash,
                        Catalog& out);

}  // namespace dnc
