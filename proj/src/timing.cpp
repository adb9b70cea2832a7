// SPDX-License-Identifier: Apache-2.0

#include "stokesmg/timing.hpp"

#include <stdexcept>

namespace stokesmg
{

void KernelTimer::charge(Clock::time_point now)
{
  if (!stack_.empty())
  {
    totals_[stack_.back()] += std::chrono::duration<double>(now - last_).count();
  }
  last_ = now;
}

void KernelTimer::start(const std::string &kernel)
{
  charge(Clock::now());
  stack_.push_back(kernel);
  totals_.try_emplace(kernel, 0.0);
}

void KernelTimer::stop()
{
  if (stack_.empty())
  {
    throw std::logic_error("KernelTimer::stop without matching start");
  }
  charge(Clock::now());
  stack_.pop_back();
}

double KernelTimer::total() const
{
  double t = 0.0;
  for (const auto &[k, v] : totals_)
  {
    t += v;
  }
  return t;
}

void KernelTimer::clear()
{
  totals_.clear();
  stack_.clear();
}

}  // namespace stokesmg
