#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hpd {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HPD_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

HPD_DEFINE_ERROR(DuplicateKeyError);
HPD_DEFINE_ERROR(ValidationError);
HPD_DEFINE_ERROR(SchemaError);
HPD_DEFINE_ERROR(EmptyCorpusError);
HPD_DEFINE_ERROR(EmptySentenceError);
HPD_DEFINE_ERROR(EmptyArticleError);
HPD_DEFINE_ERROR(DimensionMismatchError);
HPD_DEFINE_ERROR(ProviderError);
HPD_DEFINE_ERROR(CredentialError);
HPD_DEFINE_ERROR(TransportError);
HPD_DEFINE_ERROR(ProviderInconsistencyError);
HPD_DEFINE_ERROR(DivergenceError);
HPD_DEFINE_ERROR(IncompatibleFeaturesError);
HPD_DEFINE_ERROR(UnsupportedKindError);
HPD_DEFINE_ERROR(InfeasibleStratificationError);
HPD_DEFINE_ERROR(InfeasibleFractionError);
HPD_DEFINE_ERROR(ShapeError);
HPD_DEFINE_ERROR(IoError);
HPD_DEFINE_ERROR(ConfigError);

#undef HPD_DEFINE_ERROR

/// Malformed input document; carries the byte offset of the failure.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t byte_offset)
      : Error(message + " (byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace hpd
