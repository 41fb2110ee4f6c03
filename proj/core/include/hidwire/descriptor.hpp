#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hidwire {

/// (usage page, usage id). 32-bit extended usages are split into this pair.
struct Usage {
  std::uint16_t page = 0;
  std::uint16_t id = 0;

  friend auto operator<=>(const Usage&, const Usage&) = default;
};

namespace usage_page {
inline constexpr std::uint16_t kGenericDesktop = 0x01;
inline constexpr std::uint16_t kKeyboard = 0x07;
inline constexpr std::uint16_t kLeds = 0x08;
inline constexpr std::uint16_t kButton = 0x09;
inline constexpr std::uint16_t kConsumer = 0x0c;
inline constexpr std::uint16_t kVendorDefined = 0xff00;
inline constexpr std::uint16_t kFido = 0xf1d0;
}  // namespace usage_page

namespace generic_desktop {
inline constexpr std::uint16_t kPointer = 0x01;
inline constexpr std::uint16_t kMouse = 0x02;
inline constexpr std::uint16_t kJoystick = 0x04;
inline constexpr std::uint16_t kGamePad = 0x05;
inline constexpr std::uint16_t kKeyboard = 0x06;
inline constexpr std::uint16_t kKeypad = 0x07;
inline constexpr std::uint16_t kX = 0x30;
inline constexpr std::uint16_t kY = 0x31;
inline constexpr std::uint16_t kHatSwitch = 0x39;
}  // namespace generic_desktop

enum class ItemType : std::uint8_t { Main = 0, Global = 1, Local = 2 };

/// One short item of a report descriptor. Long items (prefix 0xFE) are never
/// represented; the reader rejects them.
struct DescriptorItem {
  std::uint8_t tag = 0;  // 4-bit
  ItemType type = ItemType::Main;
  std::uint32_t payload = 0;  // little-endian, zero-extended
  std::uint8_t byte_length = 1;  // prefix + payload

  std::size_t payload_size() const { return byte_length - 1u; }
  /// Payload sign-extended from its encoded width.
  std::int32_t signed_payload() const;
};

/// Reads the item starting at `offset`. Throws TruncatedItem,
/// LongItemUnsupported or UnknownItem (reserved item type).
DescriptorItem read_item(std::span<const std::uint8_t> bytes, std::size_t offset);

enum class ReportKind : std::uint8_t { Input, Output, Feature };

struct FieldFlags {
  bool constant = false;
  bool variable = false;
  bool relative = false;

  friend bool operator==(const FieldFlags&, const FieldFlags&) = default;
};

/// Layout of one Input/Output/Feature main item within its report body.
/// Offsets exclude the report-id byte.
struct ReportFieldSpec {
  std::uint8_t report_id = 0;  // 0: device uses no report ids
  ReportKind kind = ReportKind::Input;
  std::uint32_t bit_offset = 0;
  std::uint32_t bit_size = 1;
  std::uint32_t count = 1;
  std::int32_t logical_min = 0;
  std::int32_t logical_max = 0;
  std::vector<Usage> usages;
  FieldFlags flags;
  // Stored verbatim, not interpreted.
  std::uint32_t unit = 0;
  std::int32_t unit_exponent = 0;

  std::uint32_t bit_length() const { return bit_size * count; }
  bool is_array() const { return !flags.variable; }
  /// Usage of element `index` of a variable field; the last usage repeats
  /// when the list is shorter than `count`.
  Usage element_usage(std::uint32_t index) const;

  friend bool operator==(const ReportFieldSpec&, const ReportFieldSpec&) = default;
};

struct Collection {
  Usage usage;
  std::uint8_t type = 0;  // 0 physical, 1 application, 2 logical, ...
  std::vector<Collection> children;
  std::vector<ReportFieldSpec> fields;

  friend bool operator==(const Collection&, const Collection&) = default;
};

struct ReportDescriptor {
  std::vector<Collection> collections;  // top level, declaration order

  friend bool operator==(const ReportDescriptor&, const ReportDescriptor&) = default;
};

/// Runs the HID 1.11 short-item state machine. Global items persist (with
/// Push/Pop), local items reset after every main item, and each
/// Input/Output/Feature item emits exactly one ReportFieldSpec.
ReportDescriptor parse_descriptor(std::span<const std::uint8_t> bytes);

std::vector<Usage> top_level_usages(const ReportDescriptor& desc);

/// Specs of (kind, report_id) across all collections, ascending bit offset.
std::vector<ReportFieldSpec> fields_for_report(const ReportDescriptor& desc, ReportKind kind,
                                               std::uint8_t report_id);

/// Body length in bytes (excluding the id byte); 0 if the report is absent.
std::size_t report_byte_length(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id);

/// True if `collection` or any nested child declares (kind, report_id).
bool collection_declares(const Collection& collection, ReportKind kind, std::uint8_t report_id);

/// Index of the first top-level collection that declares (kind, report_id).
std::optional<std::size_t> top_level_index_for_report(const ReportDescriptor& desc, ReportKind kind,
                                                      std::uint8_t report_id);

/// Sorted, distinct report ids declared for `kind`.
std::vector<std::uint8_t> report_ids(const ReportDescriptor& desc, ReportKind kind);

bool uses_report_ids(const ReportDescriptor& desc);

}  // namespace hidwire
