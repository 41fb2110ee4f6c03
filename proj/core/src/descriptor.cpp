#include "hidwire/descriptor.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "hidwire/error.hpp"

namespace hidwire {
namespace {

// Short-item tags, HID 1.11 section 6.2.2.
namespace main_tag {
constexpr std::uint8_t kInput = 0x8;
constexpr std::uint8_t kOutput = 0x9;
constexpr std::uint8_t kCollection = 0xa;
constexpr std::uint8_t kFeature = 0xb;
constexpr std::uint8_t kEndCollection = 0xc;
}  // namespace main_tag

namespace global_tag {
constexpr std::uint8_t kUsagePage = 0x0;
constexpr std::uint8_t kLogicalMin = 0x1;
constexpr std::uint8_t kLogicalMax = 0x2;
constexpr std::uint8_t kPhysicalMin = 0x3;
constexpr std::uint8_t kPhysicalMax = 0x4;
constexpr std::uint8_t kUnitExponent = 0x5;
constexpr std::uint8_t kUnit = 0x6;
constexpr std::uint8_t kReportSize = 0x7;
constexpr std::uint8_t kReportId = 0x8;
constexpr std::uint8_t kReportCount = 0x9;
constexpr std::uint8_t kPush = 0xa;
constexpr std::uint8_t kPop = 0xb;
}  // namespace global_tag

namespace local_tag {
constexpr std::uint8_t kUsage = 0x0;
constexpr std::uint8_t kUsageMin = 0x1;
constexpr std::uint8_t kUsageMax = 0x2;
}  // namespace local_tag

constexpr std::uint8_t kLongItemPrefix = 0xfe;
constexpr std::uint32_t kMaxFieldBits = 32;
constexpr std::uint64_t kMaxReportBits = 1u << 20;

std::int32_t sign_extend(std::uint32_t value, std::size_t size) {
  switch (size) {
    case 0: return 0;
    case 1: return static_cast<std::int8_t>(value);
    case 2: return static_cast<std::int16_t>(value);
    default: return static_cast<std::int32_t>(value);
  }
}

struct SizedValue {
  std::uint32_t raw = 0;
  std::size_t size = 0;
};

struct GlobalState {
  std::uint16_t usage_page = 0;
  SizedValue logical_min;
  SizedValue logical_max;
  std::uint32_t unit = 0;
  std::int32_t unit_exponent = 0;
  std::uint32_t report_size = 0;
  std::uint8_t report_id = 0;
  std::uint32_t report_count = 0;
};

// A usage as written: a 16-bit id bound to the page at the next main item, or
// a 32-bit extended usage carrying its own page.
struct PendingUsage {
  std::uint32_t value = 0;
  bool extended = false;

  Usage resolve(std::uint16_t page) const {
    if (extended) {
      return {static_cast<std::uint16_t>(value >> 16), static_cast<std::uint16_t>(value & 0xffff)};
    }
    return {page, static_cast<std::uint16_t>(value & 0xffff)};
  }
};

struct LocalState {
  struct Entry {
    PendingUsage first;
    std::optional<PendingUsage> last;  // set for usage min/max ranges
  };
  std::vector<Entry> entries;
  std::optional<PendingUsage> pending_min;

  std::vector<Usage> resolve(std::uint16_t page) const {
    std::vector<Usage> out;
    for (const auto& e : entries) {
      Usage lo = e.first.resolve(page);
      if (!e.last) {
        out.push_back(lo);
        continue;
      }
      Usage hi = e.last->resolve(page);
      if (hi.id < lo.id) throw Error(Errc::InvalidField, "usage maximum below usage minimum");
      for (std::uint32_t id = lo.id; id <= hi.id; ++id) {
        out.push_back({lo.page, static_cast<std::uint16_t>(id)});
      }
    }
    return out;
  }
};

PendingUsage pending_usage(const DescriptorItem& item) {
  return {item.payload, item.payload_size() == 4};
}

class Parser {
 public:
  explicit Parser(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  ReportDescriptor run() {
    std::size_t offset = 0;
    while (offset < bytes_.size()) {
      DescriptorItem item = read_item(bytes_, offset);
      switch (item.type) {
        case ItemType::Main: on_main(item, offset); break;
        case ItemType::Global: on_global(item, offset); break;
        case ItemType::Local: on_local(item); break;
      }
      offset += item.byte_length;
    }
    if (!open_.empty()) {
      throw Error(Errc::UnbalancedCollection,
                  std::to_string(open_.size()) + " collection(s) still open at end of descriptor");
    }
    for (const auto& [key, bits] : next_offset_) {
      if (bits % 8 != 0) {
        throw Error(Errc::MisalignedReport, "report id " + std::to_string(key.second) + " spans " +
                                                std::to_string(bits) + " bits");
      }
    }
    return std::move(result_);
  }

 private:
  void on_main(const DescriptorItem& item, std::size_t offset) {
    switch (item.tag) {
      case main_tag::kInput: emit_field(ReportKind::Input, item, offset); break;
      case main_tag::kOutput: emit_field(ReportKind::Output, item, offset); break;
      case main_tag::kFeature: emit_field(ReportKind::Feature, item, offset); break;
      case main_tag::kCollection: {
        Collection c;
        auto usages = local_.resolve(global_.usage_page);
        c.usage = usages.empty() ? Usage{global_.usage_page, 0} : usages.front();
        c.type = static_cast<std::uint8_t>(item.payload);
        open_.push_back(std::move(c));
        break;
      }
      case main_tag::kEndCollection: {
        if (open_.empty()) {
          throw Error(Errc::UnbalancedCollection,
                      "End Collection without open collection at offset " + std::to_string(offset));
        }
        Collection done = std::move(open_.back());
        open_.pop_back();
        (open_.empty() ? result_.collections : open_.back().children).push_back(std::move(done));
        break;
      }
      default:
        throw Error(Errc::UnknownItem, "main tag " + std::to_string(item.tag) + " at offset " +
                                           std::to_string(offset));
    }
    local_ = {};
  }

  void emit_field(ReportKind kind, const DescriptorItem& item, std::size_t offset) {
    if (open_.empty()) {
      throw Error(Errc::FieldOutsideCollection, "at offset " + std::to_string(offset));
    }
    ReportFieldSpec spec;
    spec.kind = kind;
    spec.report_id = global_.report_id;
    spec.bit_size = global_.report_size;
    spec.count = global_.report_count;
    spec.flags.constant = (item.payload & 0x1) != 0;
    spec.flags.variable = (item.payload & 0x2) != 0;
    spec.flags.relative = (item.payload & 0x4) != 0;
    spec.unit = global_.unit;
    spec.unit_exponent = global_.unit_exponent;
    spec.logical_min = sign_extend(global_.logical_min.raw, global_.logical_min.size);
    if (spec.logical_min < 0 ||
        global_.logical_max.raw > static_cast<std::uint32_t>(std::numeric_limits<std::int32_t>::max())) {
      spec.logical_max = sign_extend(global_.logical_max.raw, global_.logical_max.size);
    } else {
      spec.logical_max = static_cast<std::int32_t>(global_.logical_max.raw);
    }
    spec.usages = local_.resolve(global_.usage_page);

    const std::string where = " at offset " + std::to_string(offset);
    if (spec.bit_size == 0 || spec.bit_size > kMaxFieldBits) {
      throw Error(Errc::InvalidField, "report size " + std::to_string(spec.bit_size) + where);
    }
    if (spec.count == 0) throw Error(Errc::InvalidField, "report count 0" + where);
    if (static_cast<std::uint64_t>(spec.bit_size) * spec.count > kMaxReportBits) {
      throw Error(Errc::InvalidField, "field longer than " + std::to_string(kMaxReportBits) + " bits" + where);
    }
    if (!spec.flags.constant && spec.logical_min > spec.logical_max) {
      throw Error(Errc::InvalidField, "logical minimum exceeds logical maximum" + where);
    }

    if (spec.report_id == 0) {
      if (saw_numbered_) throw Error(Errc::MixedReportIds, "unnumbered field after report ids" + where);
      saw_unnumbered_ = true;
    } else {
      if (saw_unnumbered_) throw Error(Errc::MixedReportIds, "numbered field after unnumbered" + where);
      saw_numbered_ = true;
    }

    std::uint32_t& next = next_offset_[{kind, spec.report_id}];
    spec.bit_offset = next;
    next += spec.bit_length();
    open_.back().fields.push_back(std::move(spec));
  }

  void on_global(const DescriptorItem& item, std::size_t offset) {
    switch (item.tag) {
      case global_tag::kUsagePage: global_.usage_page = static_cast<std::uint16_t>(item.payload); break;
      case global_tag::kLogicalMin: global_.logical_min = {item.payload, item.payload_size()}; break;
      case global_tag::kLogicalMax: global_.logical_max = {item.payload, item.payload_size()}; break;
      case global_tag::kPhysicalMin:
      case global_tag::kPhysicalMax: break;
      case global_tag::kUnitExponent: global_.unit_exponent = item.signed_payload(); break;
      case global_tag::kUnit: global_.unit = item.payload; break;
      case global_tag::kReportSize: global_.report_size = item.payload; break;
      case global_tag::kReportId:
        if (item.payload == 0 || item.payload > 0xff) {
          throw Error(Errc::InvalidReportId,
                      "report id " + std::to_string(item.payload) + " at offset " + std::to_string(offset));
        }
        global_.report_id = static_cast<std::uint8_t>(item.payload);
        break;
      case global_tag::kReportCount: global_.report_count = item.payload; break;
      case global_tag::kPush: stack_.push_back(global_); break;
      case global_tag::kPop:
        if (stack_.empty()) {
          throw Error(Errc::GlobalStackUnderflow, "Pop at offset " + std::to_string(offset));
        }
        global_ = stack_.back();
        stack_.pop_back();
        break;
      default: break;  // reserved
    }
  }

  void on_local(const DescriptorItem& item) {
    switch (item.tag) {
      case local_tag::kUsage: local_.entries.push_back({pending_usage(item), std::nullopt}); break;
      case local_tag::kUsageMin: local_.pending_min = pending_usage(item); break;
      case local_tag::kUsageMax:
        if (local_.pending_min) {
          local_.entries.push_back({*local_.pending_min, pending_usage(item)});
          local_.pending_min.reset();
        }
        break;
      default: break;  // designators, strings, delimiters
    }
  }

  std::span<const std::uint8_t> bytes_;
  ReportDescriptor result_;
  GlobalState global_;
  std::vector<GlobalState> stack_;
  LocalState local_;
  std::vector<Collection> open_;
  std::map<std::pair<ReportKind, std::uint8_t>, std::uint32_t> next_offset_;
  bool saw_numbered_ = false;
  bool saw_unnumbered_ = false;
};

void collect_fields(const Collection& c, ReportKind kind, std::uint8_t id, std::vector<ReportFieldSpec>& out) {
  for (const auto& f : c.fields) {
    if (f.kind == kind && f.report_id == id) out.push_back(f);
  }
  for (const auto& child : c.children) collect_fields(child, kind, id, out);
}

template <typename Fn>
void for_each_field(const Collection& c, Fn&& fn) {
  for (const auto& f : c.fields) fn(f);
  for (const auto& child : c.children) for_each_field(child, fn);
}

}  // namespace

bool collection_declares(const Collection& c, ReportKind kind, std::uint8_t id) {
  for (const auto& f : c.fields) {
    if (f.kind == kind && f.report_id == id) return true;
  }
  return std::any_of(c.children.begin(), c.children.end(),
                     [&](const Collection& child) { return collection_declares(child, kind, id); });
}

std::int32_t DescriptorItem::signed_payload() const { return sign_extend(payload, payload_size()); }

DescriptorItem read_item(std::span<const std::uint8_t> bytes, std::size_t offset) {
  const std::uint8_t prefix = bytes[offset];
  if (prefix == kLongItemPrefix) {
    throw Error(Errc::LongItemUnsupported, "at offset " + std::to_string(offset));
  }
  const std::uint8_t type = (prefix >> 2) & 0x3;
  if (type == 3) {
    throw Error(Errc::UnknownItem, "reserved item type at offset " + std::to_string(offset));
  }
  static constexpr std::size_t kSizes[] = {0, 1, 2, 4};
  const std::size_t size = kSizes[prefix & 0x3];
  if (offset + 1 + size > bytes.size()) {
    throw Error(Errc::TruncatedItem, "item at offset " + std::to_string(offset) + " needs " +
                                         std::to_string(size) + " payload byte(s), " +
                                         std::to_string(bytes.size() - offset - 1) + " left");
  }
  DescriptorItem item;
  item.tag = prefix >> 4;
  item.type = static_cast<ItemType>(type);
  item.byte_length = static_cast<std::uint8_t>(1 + size);
  for (std::size_t i = 0; i < size; ++i) {
    item.payload |= static_cast<std::uint32_t>(bytes[offset + 1 + i]) << (8 * i);
  }
  return item;
}

Usage ReportFieldSpec::element_usage(std::uint32_t index) const {
  if (usages.empty()) return {};
  return usages[std::min<std::size_t>(index, usages.size() - 1)];
}

ReportDescriptor parse_descriptor(std::span<const std::uint8_t> bytes) { return Parser(bytes).run(); }

std::vector<Usage> top_level_usages(const ReportDescriptor& desc) {
  std::vector<Usage> out;
  out.reserve(desc.collections.size());
  for (const auto& c : desc.collections) out.push_back(c.usage);
  return out;
}

std::vector<ReportFieldSpec> fields_for_report(const ReportDescriptor& desc, ReportKind kind,
                                               std::uint8_t report_id) {
  std::vector<ReportFieldSpec> out;
  for (const auto& c : desc.collections) collect_fields(c, kind, report_id, out);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.bit_offset < b.bit_offset; });
  return out;
}

std::size_t report_byte_length(const ReportDescriptor& desc, ReportKind kind, std::uint8_t report_id) {
  std::uint32_t bits = 0;
  for (const auto& f : fields_for_report(desc, kind, report_id)) {
    bits = std::max(bits, f.bit_offset + f.bit_length());
  }
  return (bits + 7) / 8;
}

std::optional<std::size_t> top_level_index_for_report(const ReportDescriptor& desc, ReportKind kind,
                                                      std::uint8_t report_id) {
  for (std::size_t i = 0; i < desc.collections.size(); ++i) {
    if (collection_declares(desc.collections[i], kind, report_id)) return i;
  }
  return std::nullopt;
}

std::vector<std::uint8_t> report_ids(const ReportDescriptor& desc, ReportKind kind) {
  std::vector<std::uint8_t> ids;
  for (const auto& c : desc.collections) {
    for_each_field(c, [&](const ReportFieldSpec& f) {
      if (f.kind == kind) ids.push_back(f.report_id);
    });
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

bool uses_report_ids(const ReportDescriptor& desc) {
  bool numbered = false;
  for (const auto& c : desc.collections) {
    for_each_field(c, [&](const ReportFieldSpec& f) { numbered = numbered || f.report_id != 0; });
  }
  return numbered;
}

}  // namespace hidwire
