#include "boldscale/error.hpp"
#include "boldscale/parallel.hpp"
#include "boldscale/random.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace boldscale {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidProblem: return "invalid-problem";
    case ErrorKind::InvalidWeighting: return "invalid-weighting";
    case ErrorKind::EmptyInput: return "empty-input";
    case ErrorKind::UndefinedCoefficient: return "undefined-coefficient";
    case ErrorKind::TooFewVariables: return "too-few-variables";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::InvalidFacet: return "invalid-facet";
    case ErrorKind::EmptyRegion: return "empty-region";
    case ErrorKind::MissingResponses: return "missing-responses";
    case ErrorKind::DegenerateSolution: return "degenerate-solution";
    case ErrorKind::ConstantItem: return "constant-item";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::GenerationFailure: return "generation-failure";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::IdMismatch: return "id-mismatch";
    case ErrorKind::MissingStage: return "missing-stage";
    case ErrorKind::SchemaVersion: return "schema-version";
  }
  return "unknown";
}

double SplitMix64::normal() noexcept {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  mix.next();
  return mix.next();
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace boldscale
