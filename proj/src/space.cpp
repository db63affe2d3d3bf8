#include "segwt/space.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace segwt {

double SpaceReport::reference_bits() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    return 2.0 * nn * std::log2(nn);
}

std::optional<double> SpaceReport::ratio() const {
    if (n < 2) return std::nullopt;
    return static_cast<double>(total.total_bits()) / reference_bits();
}

std::optional<double> SpaceReport::payload_ratio() const {
    if (n < 2) return std::nullopt;
    return static_cast<double>(total.payload_bits) / reference_bits();
}

std::optional<double> SpaceReport::linear_constant() const {
    if (n < 1) return std::nullopt;
    return (static_cast<double>(total.total_bits()) - reference_bits()) / static_cast<double>(n);
}

std::string format_space_report(const SpaceReport& report) {
    std::ostringstream out;
    out << "n " << report.n << '\n';
    for (const auto& level : report.levels)
        out << "  " << std::left << std::setw(10) << level.name << " payload " << level.bits.payload_bits
            << " overhead " << level.bits.overhead_bits << '\n';
    out << "payload_bits " << report.total.payload_bits << '\n';
    out << "overhead_bits " << report.total.overhead_bits << '\n';
    out << "total_bits " << report.total.total_bits() << '\n';
    out << std::fixed << std::setprecision(4);
    if (auto r = report.ratio()) out << "total / (2n lg n) " << *r << '\n';
    if (auto c = report.linear_constant()) out << "c in total = 2n lg n + c n: " << *c << '\n';
    return out.str();
}

}  // namespace segwt
