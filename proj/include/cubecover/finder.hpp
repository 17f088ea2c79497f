#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubecover/decomposition.hpp"
#include "cubecover/hyperplane.hpp"
#include "cubecover/params.hpp"

namespace cubecover {

/// Coordinates fixed so far; every assignment is tagged with the phase that
/// produced it. Completion requires exactly the N1, N2, N3 columns.
struct PartialVertex {
  int n = 0;
  std::map<int, std::int8_t> assigned;
  std::map<int, char> phase_tag;  // '1', '2', '3'

  void set(int coord, std::int8_t sign, char phase);
};

struct PhaseFailure : std::runtime_error {
  std::string phase;
  std::string reason;
  bool premise;  // premise violation rather than exhausted retries
  std::vector<std::string> notes;
  PhaseFailure(std::string ph, std::string r, bool prem)
      : std::runtime_error(ph + ": " + r), phase(std::move(ph)), reason(std::move(r)),
        premise(prem) {}
};

/// Fixes the excluded columns so every plane supported only there is
/// avoided on any completion. Exhaustive in enumeration order when the
/// column count allows it, seeded sampling otherwise.
PartialVertex phase1(const Cover& c, const FourWayDecomposition& d, const ParamSet& p);

/// Fixes the middle columns by rejection sampling: planes vanishing on the
/// kept columns must be avoided outright, and rows with many scales must be
/// left with a residual strictly above the l1 norm of their kept part, so
/// no later completion can reach them.
PartialVertex phase2(const Cover& c, const FourWayDecomposition& d, const PartialVertex& u1,
                     const ParamSet& p);

/// Fixes the kept columns through the margin pipeline: rational upper
/// normalizers, flip ascent on the Gram matrix for a width-theta margin,
/// inner-product-preserving rounding, then randomized completion with exact
/// certification per attempt. Per-row variances of the completion step are
/// reported through `notes` when given.
PartialVertex phase3(const Cover& c, const FourWayDecomposition& d, const PartialVertex& u12,
                     const ParamSet& p, std::vector<std::string>* notes = nullptr);

struct PlaneEvaluation {
  int plane = 0;
  Rat value;  // non-zero in a valid certificate
};

struct FinderOutcome {
  enum class Status { Found, PhaseFailure, PremiseFailure };
  Status status = Status::PremiseFailure;
  std::optional<Vertex> vertex;
  std::vector<PlaneEvaluation> certificate;  // all k planes when found
  std::string failed_phase;
  std::string reason;
  bool used_fallback = false;
  std::vector<std::string> notes;  // sigma diagnostics, checker summary
};

/// The full pipeline: premise check, decomposition, three phases, assembly,
/// and an exhaustive per-plane certificate on success. Randomness affects
/// only success and running time, never soundness. The optional fallback
/// scans the cube when the pipeline fails and n is within the guard.
FinderOutcome find_uncovered(const Cover& c, const ParamSet& p, bool fallback_exhaustive = false,
                             int guard = kDefaultEnumGuard);

}  // namespace cubecover
