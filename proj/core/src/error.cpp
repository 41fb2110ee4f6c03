#include "hidwire/error.hpp"

namespace hidwire {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::TruncatedItem: return "TruncatedItem";
    case Errc::UnbalancedCollection: return "UnbalancedCollection";
    case Errc::LongItemUnsupported: return "LongItemUnsupported";
    case Errc::MisalignedReport: return "MisalignedReport";
    case Errc::UnknownItem: return "UnknownItem";
    case Errc::FieldOutsideCollection: return "FieldOutsideCollection";
    case Errc::InvalidField: return "InvalidField";
    case Errc::InvalidReportId: return "InvalidReportId";
    case Errc::MixedReportIds: return "MixedReportIds";
    case Errc::GlobalStackUnderflow: return "GlobalStackUnderflow";
    case Errc::BufferTooShort: return "BufferTooShort";
    case Errc::UnknownReport: return "UnknownReport";
    case Errc::ValueOutOfRange: return "ValueOutOfRange";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidFilter: return "InvalidFilter";
    case Errc::NoDeviceChosen: return "NoDeviceChosen";
    case Errc::UnknownDevice: return "UnknownDevice";
    case Errc::NotGranted: return "NotGranted";
    case Errc::AlreadyOpen: return "AlreadyOpen";
    case Errc::NotOpen: return "NotOpen";
    case Errc::ProtectedCollection: return "ProtectedCollection";
    case Errc::ParseError: return "ParseError";
    case Errc::NonMonotoneTimestamp: return "NonMonotoneTimestamp";
    case Errc::DeviceDetached: return "DeviceDetached";
    case Errc::EmptyReport: return "EmptyReport";
    case Errc::ReportTooShort: return "ReportTooShort";
    case Errc::WrongMode: return "WrongMode";
    case Errc::InvalidMode: return "InvalidMode";
    case Errc::NonMonotoneTime: return "NonMonotoneTime";
    case Errc::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace hidwire
