#include "tsf_writer.hpp"

#include <cstdio>
#include <ostream>

namespace tsbench::testing {

void write_tsf(std::ostream& out, const TsfFile& file) {
  const auto& h = file.header;
  out << "@relation " << h.relation << "\n";
  for (const auto& a : h.attributes) {
    const char* type = a.type == AttributeType::date ? "date" : a.type == AttributeType::numeric ? "numeric" : "string";
    out << "@attribute " << a.name << " " << type << "\n";
  }
  out << "@frequency " << h.frequency << "\n";
  if (h.horizon) out << "@horizon " << *h.horizon << "\n";
  out << "@missing " << (h.missing ? "true" : "false") << "\n";
  out << "@equallength " << (h.equal_length ? "true" : "false") << "\n";
  out << "@data\n";
  for (std::size_t i = 0; i < file.dataset.series.size(); ++i) {
    for (const auto& attr : file.attribute_values[i]) out << attr << ":";
    bool first = true;
    for (const auto& v : file.dataset.series[i].values()) {
      if (!first) out << ",";
      first = false;
      if (v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        out << buf;
      } else {
        out << "?";
      }
    }
    out << "\n";
  }
}

}  // namespace tsbench::testing
