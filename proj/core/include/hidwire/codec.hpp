#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hidwire/descriptor.hpp"
#include "hidwire/hex.hpp"

namespace hidwire {

// Bit order for both directions: element i of a field occupies bits
// [bit_offset + i*bit_size, bit_offset + (i+1)*bit_size) of the report body,
// where bit n lives in byte n/8 at position n%8 (LSB first). Multi-byte values
// are little-endian.

struct DecodedField {
  Usage usage;  // for array slots: the usage selected by the index
  std::int64_t value = 0;  // sign-extended iff logical_min < 0
  std::uint64_t raw = 0;  // bit pattern as read
  bool out_of_range = false;  // value outside [logical_min, logical_max]
  bool array_slot = false;  // element of an array (non-variable) field
  bool null_slot = false;  // array slot holding the null state; usage is {0,0}

  friend bool operator==(const DecodedField&, const DecodedField&) = default;
};

/// Element `index` of `spec`. Throws BufferTooShort or IndexOutOfRange.
std::int64_t extract_field(std::span<const std::uint8_t> data, const ReportFieldSpec& spec, std::uint32_t index);

/// Writes the low `spec.bit_size` bits of `value` into element `index`.
void insert_field(std::span<std::uint8_t> data, const ReportFieldSpec& spec, std::uint32_t index, std::int64_t value);

/// One entry per element of every non-constant field, in descriptor order.
/// Throws UnknownReport or BufferTooShort.
std::vector<DecodedField> decode_report(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id,
                                        std::span<const std::uint8_t> data);

/// Inverse of decode_report: `values` holds one integer per non-constant
/// element. Padding bits are zero. Throws UnknownReport, ArityMismatch or
/// ValueOutOfRange.
Bytes encode_report(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id,
                    std::span<const std::int64_t> values);

inline std::vector<DecodedField> decode_input_report(const ReportDescriptor& desc, std::uint8_t report_id,
                                                     std::span<const std::uint8_t> data) {
  return decode_report(desc, ReportKind::Input, report_id, data);
}

inline Bytes encode_output_report(const ReportDescriptor& desc, std::uint8_t report_id,
                                  std::span<const std::int64_t> values) {
  return encode_report(desc, ReportKind::Output, report_id, values);
}

}  // namespace hidwire
