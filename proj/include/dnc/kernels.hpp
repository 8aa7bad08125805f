#pragma once

#include <cstddef>
#include <vector>

#include "dnc/action_space.hpp"
#include "dnc/linalg.hpp"
#include "dnc/mlp.hpp"

namespace dnc {

// Batch kernels on the hot paths. Each kernel has a serial reference and an
// OpenMP variant; every output element is computed independently with the
// same floating-point operation order, so the two variants (and any thread
// count) produce bit-identical results. The *_serial forms stay as the
// reference for tests and for the kernel benchmark.
namespace parallel {

// 0 selects the OpenMP default. Thread count only affects speed, not results.
void set_thread_count(int n);
int thread_count();

// True when the dispatching kernel wrappers may use OpenMP.
bool enabled();

}  // namespace parallel

// ---- split-input critic evaluation ----------------------------------------
//
// The critic consumes [state features ; min-max normalized action]. For a
// fixed state, the feature contribution to the first layer is constant across
// a candidate batch, so it is hoisted: state_part = b_0 + W_0[:, :F] * feats.

Vec64 critic_state_part(const MlpParams& critic, const Vec64& feats);

// Q-values for a batch of discrete actions sharing one state.
void critic_batch_eval_serial(const MlpParams& critic, const Vec64& state_part,
                              const ActionSpaceSpec& spec,
                              const std::vector<Vec64>& actions, Vec64& q_out);
void critic_batch_eval_omp(const MlpParams& critic, const Vec64& state_part,
                           const ActionSpaceSpec& spec,
                           const std::vector<Vec64>& actions, Vec64& q_out);
void critic_batch_eval(const MlpParams& critic, const Vec64& state_part,
                       const ActionSpaceSpec& spec,
                       const std::vector<Vec64>& actions, Vec64& q_out);

// ---- distance scan ---------------------------------------------------------

void squared_distance_scan_serial(const std::vector<Vec64>& points, const Vec64& query,
                                  Vec64& out);
void squared_distance_scan_omp(const std::vector<Vec64>& points, const Vec64& query,
                               Vec64& out);
void squared_distance_scan(const std::vector<Vec64>& points, const Vec64& query,
                           Vec64& out);

// ---- pairwise cosine similarity --------------------------------------------

Mat64 cosine_similarity_matrix_serial(const Mat64& rows);
Mat64 cosine_similarity_matrix_omp(const Mat64& rows);
Mat64 cosine_similarity_matrix(const Mat64& rows);

}  // namespace dnc
