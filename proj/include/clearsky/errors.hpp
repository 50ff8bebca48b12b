#pragma once

#include <stdexcept>
#include <string>

namespace clearsky {

/// Base class for every error raised by this library. Each alias below maps
/// to one failure mode named in the module contracts, so callers (and tests)
/// can catch the precise condition they care about.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CLEARSKY_ERROR(NAME)        \
  class NAME : public Error {       \
   public:                          \
    using Error::Error;             \
  }

// data ingestion
CLEARSKY_ERROR(MissingBand);
CLEARSKY_ERROR(MalformedRaster);
CLEARSKY_ERROR(MissingStats);
CLEARSKY_ERROR(NonFiniteInput);
CLEARSKY_ERROR(UnknownLabel);
CLEARSKY_ERROR(EmptyLabelList);
CLEARSKY_ERROR(UnknownPatchInList);
CLEARSKY_ERROR(EmptyDomain);

// classifier
CLEARSKY_ERROR(EmptyLabels);
CLEARSKY_ERROR(NonFiniteLogits);
CLEARSKY_ERROR(LengthMismatch);
CLEARSKY_ERROR(ShapeMismatch);
CLEARSKY_ERROR(DivergedTraining);

// frechet distance
CLEARSKY_ERROR(TooFewSamples);
CLEARSKY_ERROR(NotSymmetric);
CLEARSKY_ERROR(IndefiniteMatrix);
CLEARSKY_ERROR(DimensionMismatch);
CLEARSKY_ERROR(NumericalFailure);

// gan
CLEARSKY_ERROR(ZeroMatrix);
CLEARSKY_ERROR(NonFiniteScores);
CLEARSKY_ERROR(DivergedStep);

// harness
CLEARSKY_ERROR(BadConfig);
CLEARSKY_ERROR(ParseError);
CLEARSKY_ERROR(ValidationError);
CLEARSKY_ERROR(IoError);
CLEARSKY_ERROR(VersionMismatch);
CLEARSKY_ERROR(UsageError);

#undef CLEARSKY_ERROR

}  // namespace clearsky
