// SPDX-License-Identifier: Apache-2.0

#ifndef STOKESMG_TIMING_HPP
#define STOKESMG_TIMING_HPP

#include <chrono>
#include <map>
#include <string>
#include <vector>

namespace stokesmg
{

//
// Wall-clock attribution of time to named kernels. Scopes nest; time is charged
// exclusively to the innermost open scope, so the totals of all kernels never double
// count and sum to the time spent inside outermost scopes.
//
class KernelTimer
{
public:
  using Clock = std::chrono::steady_clock;

  void start(const std::string &kernel);
  void stop();

  const std::map<std::string, double> &totals() const { return totals_; }
  double total() const;
  void clear();

  // RAII scope; a null timer makes it a no-op.
  class Scope
  {
  public:
    Scope(KernelTimer *timer, const std::string &kernel) : timer_(timer)
    {
      if (timer_)
      {
        timer_->start(kernel);
      }
    }
    ~Scope()
    {
      if (timer_)
      {
        timer_->stop();
      }
    }
    Scope(const Scope &) = delete;
    Scope &operator=(const Scope &) = delete;

  private:
    KernelTimer *timer_;
  };

private:
  void charge(Clock::time_point now);

  std::map<std::string, double> totals_;
  std::vector<std::string> stack_;
  Clock::time_point last_{};
};

// Seconds elapsed since a time point.
inline double seconds_since(KernelTimer::Clock::time_point t0)
{
  return std::chrono::duration<double>(KernelTimer::Clock::now() - t0).count();
}

}  // namespace stokesmg

#endif  // STOKESMG_TIMING_HPP
