#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hidwire {

enum class Errc {
  // descriptor
  TruncatedItem,
  UnbalancedCollection,
  LongItemUnsupported,
  MisalignedReport,
  UnknownItem,
  FieldOutsideCollection,
  InvalidField,
  InvalidReportId,
  MixedReportIds,
  GlobalStackUnderflow,
  // codec
  BufferTooShort,
  UnknownReport,
  ValueOutOfRange,
  ArityMismatch,
  IndexOutOfRange,
  // device model
  InvalidFilter,
  NoDeviceChosen,
  UnknownDevice,
  NotGranted,
  AlreadyOpen,
  NotOpen,
  ProtectedCollection,
  // transport
  ParseError,
  NonMonotoneTimestamp,
  DeviceDetached,
  // joycon
  EmptyReport,
  ReportTooShort,
  WrongMode,
  InvalidMode,
  // jump detector
  NonMonotoneTime,
  InvalidConfig,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. `what()` starts with the code name so
/// command-line output can be matched on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace hidwire
