#include "hidwire/codec.hpp"

#include <string>

#include "hidwire/error.hpp"

namespace hidwire {
namespace {

std::uint64_t read_bits(std::span<const std::uint8_t> data, std::uint64_t bit, std::uint32_t width) {
  std::uint64_t out = 0;
  for (std::uint32_t i = 0; i < width; ++i, ++bit) {
    const std::uint64_t b = (data[bit / 8] >> (bit % 8)) & 1u;
    out |= b << i;
  }
  return out;
}

void write_bits(std::span<std::uint8_t> data, std::uint64_t bit, std::uint32_t width, std::uint64_t value) {
  for (std::uint32_t i = 0; i < width; ++i, ++bit) {
    const auto mask = static_cast<std::uint8_t>(1u << (bit % 8));
    if ((value >> i) & 1u) {
      data[bit / 8] |= mask;
    } else {
      data[bit / 8] &= static_cast<std::uint8_t>(~mask);
    }
  }
}

std::int64_t interpret(std::uint64_t raw, const ReportFieldSpec& spec) {
  if (spec.logical_min < 0 && spec.bit_size < 64 && (raw >> (spec.bit_size - 1)) & 1u) {
    return static_cast<std::int64_t>(raw | (~std::uint64_t{0} << spec.bit_size));
  }
  return static_cast<std::int64_t>(raw);
}

void check_length(std::span<const std::uint8_t> data, const ReportFieldSpec& spec) {
  const std::uint64_t needed_bits = std::uint64_t{spec.bit_offset} + spec.bit_length();
  if (std::uint64_t{data.size()} * 8 < needed_bits) {
    throw Error(Errc::BufferTooShort, "need " + std::to_string((needed_bits + 7) / 8) + " byte(s), have " +
                                          std::to_string(data.size()));
  }
}

std::vector<ReportFieldSpec> specs_or_throw(const ReportDescriptor& desc, ReportKind kind, std::uint8_t id) {
  auto specs = fields_for_report(desc, kind, id);
  if (specs.empty()) throw Error(Errc::UnknownReport, "report id " + std::to_string(id));
  return specs;
}

}  // namespace

std::int64_t extract_field(std::span<const std::uint8_t> data, const ReportFieldSpec& spec, std::uint32_t index) {
  if (index >= spec.count) {
    throw Error(Errc::IndexOutOfRange, "element " + std::to_string(index) + " of " + std::to_string(spec.count));
  }
  check_length(data, spec);
  const std::uint64_t bit = std::uint64_t{spec.bit_offset} + std::uint64_t{index} * spec.bit_size;
  return interpret(read_bits(data, bit, spec.bit_size), spec);
}

void insert_field(std::span<std::uint8_t> data, const ReportFieldSpec& spec, std::uint32_t index, std::int64_t value) {
  if (index >= spec.count) {
    throw Error(Errc::IndexOutOfRange, "element " + std::to_string(index) + " of " + std::to_string(spec.count));
  }
  check_length(data, spec);
  const std::uint64_t bit = std::uint64_t{spec.bit_offset} + std::uint64_t{index} * spec.bit_size;
  write_bits(data, bit, spec.bit_size, static_cast<std::uint64_t>(value));
}

std::vector<DecodedField> decode_report(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id,
                                        std::span<const std::uint8_t> data) {
  const auto specs = specs_or_throw(desc, kind, report_id);
  for (const auto& spec : specs) check_length(data, spec);

  std::vector<DecodedField> out;
  for (const auto& spec : specs) {
    if (spec.flags.constant) continue;
    for (std::uint32_t i = 0; i < spec.count; ++i) {
      const std::uint64_t bit = std::uint64_t{spec.bit_offset} + std::uint64_t{i} * spec.bit_size;
      DecodedField field;
      field.raw = read_bits(data, bit, spec.bit_size);
      field.value = interpret(field.raw, spec);
      field.out_of_range = field.value < spec.logical_min || field.value > spec.logical_max;
      if (spec.is_array()) {
        field.array_slot = true;
        field.null_slot = field.out_of_range;
        if (!field.null_slot) {
          field.usage = spec.element_usage(static_cast<std::uint32_t>(field.value - spec.logical_min));
        }
      } else {
        field.usage = spec.element_usage(i);
      }
      out.push_back(field);
    }
  }
  return out;
}

Bytes encode_report(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id,
                    std::span<const std::int64_t> values) {
  const auto specs = specs_or_throw(desc, kind, report_id);
  std::size_t arity = 0;
  for (const auto& spec : specs) {
    if (!spec.flags.constant) arity += spec.count;
  }
  if (values.size() != arity) {
    throw Error(Errc::ArityMismatch, "expected " + std::to_string(arity) + " value(s), got " +
                                         std::to_string(values.size()));
  }

  Bytes out(report_byte_length(desc, kind, report_id), 0);
  std::size_t next = 0;
  for (const auto& spec : specs) {
    if (spec.flags.constant) continue;
    for (std::uint32_t i = 0; i < spec.count; ++i, ++next) {
      const std::int64_t v = values[next];
      if (v < spec.logical_min || v > spec.logical_max) {
        throw Error(Errc::ValueOutOfRange, "value " + std::to_string(v) + " outside [" +
                                               std::to_string(spec.logical_min) + ", " +
                                               std::to_string(spec.logical_max) + "]");
      }
      insert_field(out, spec, i, v);
    }
  }
  return out;
}

}  // namespace hidwire
