#include "fitbench/fast_math.hpp"

namespace fitbench {
namespace {

void check_views(std::span<const double> in, std::span<double> out) {
  if (in.size() != out.size())
    raise(ErrorCode::LengthMismatch, "batch_map: input length " + std::to_string(in.size()) +
                                         " != output length " + std::to_string(out.size()));
}

}  // namespace

void batch_map(MapFn fn, std::span<const double> in, std::span<double> out) {
  check_views(in, out);
  switch (fn) {
    case MapFn::FastExp: detail::map_serial([](double x) { return fast_exp(x); }, in, out); break;
    case MapFn::FastLog: detail::map_serial([](double x) { return fast_log(x); }, in, out); break;
    case MapFn::ReferenceExp: detail::map_serial([](double x) { return std::exp(x); }, in, out); break;
    case MapFn::ReferenceLog: detail::map_serial([](double x) { return std::log(x); }, in, out); break;
  }
}

void batch_map_parallel(MapFn fn, std::span<const double> in, std::span<double> out) {
  check_views(in, out);
  switch (fn) {
    case MapFn::FastExp: detail::map_parallel([](double x) { return fast_exp(x); }, in, out); break;
    case MapFn::FastLog: detail::map_parallel([](double x) { return fast_log(x); }, in, out); break;
    case MapFn::ReferenceExp: detail::map_parallel([](double x) { return std::exp(x); }, in, out); break;
    case MapFn::ReferenceLog: detail::map_parallel([](double x) { return std::log(x); }, in, out); break;
  }
}

}  // namespace fitbench
