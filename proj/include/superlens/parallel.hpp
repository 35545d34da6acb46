#ifndef SUPERLENS_PARALLEL_HPP
#define SUPERLENS_PARALLEL_HPP

namespace superlens
{

// Worker count for the per-alpha fan-out. jobs == 1 selects the serial reference
// kernels; jobs <= 0 uses all available OpenMP threads.
struct ExecutionPolicy
{
  int jobs = 0;

  bool serial() const { return jobs == 1; }
  int resolved_jobs() const;
};

// Neumaier-compensated running sum, used for every reduction over alpha.
template <class T>
class CompensatedSum
{
public:
  void add(const T &x)
  {
    const T t = sum_ + x;
    if (magnitude(sum_) >= magnitude(x))
    {
      comp_ += (sum_ - t) + x;
    }
    else
    {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + comp_; }

private:
  template <class U>
  static double magnitude(const U &u)
  {
    using std::abs;
    return abs(u);
  }

  T sum_{};
  T comp_{};
};

}  // namespace superlens

#endif  // SUPERLENS_PARALLEL_HPP
