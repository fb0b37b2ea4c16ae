#include <stdexcept>
#include <string>

#include "mixmono/errors.hpp"
#include "mixmono/expr.hpp"

namespace mixmono {

namespace {

Interval enclose(const Expr& e, const Box& box, DivisionMode mode) {
  switch (e.op()) {
    case Op::Constant:
      return Interval(e.value());
    case Op::Variable:
      if (static_cast<std::size_t>(e.index()) > box.dim()) {
        throw DimensionError("variable x" + std::to_string(e.index()) + " outside box dimension");
      }
      return box[e.index() - 1];
    case Op::Neg:
      return -enclose(e.arg(), box, mode);
    case Op::Sin:
      return sin(enclose(e.arg(), box, mode));
    case Op::Cos:
      return cos(enclose(e.arg(), box, mode));
    case Op::Exp:
      return exp(enclose(e.arg(), box, mode));
    case Op::Abs:
      return abs(enclose(e.arg(), box, mode));
    case Op::Sign:
      return sign(enclose(e.arg(), box, mode));
    case Op::Pow:
      return pow(enclose(e.arg(), box, mode), e.index());
    case Op::Add:
      return enclose(e.arg(0), box, mode) + enclose(e.arg(1), box, mode);
    case Op::Sub:
      return enclose(e.arg(0), box, mode) - enclose(e.arg(1), box, mode);
    case Op::Mul:
      return enclose(e.arg(0), box, mode) * enclose(e.arg(1), box, mode);
    case Op::Div:
      return divide(enclose(e.arg(0), box, mode), enclose(e.arg(1), box, mode), mode);
    case Op::Min:
      return min(enclose(e.arg(0), box, mode), enclose(e.arg(1), box, mode));
    case Op::Max:
      return max(enclose(e.arg(0), box, mode), enclose(e.arg(1), box, mode));
  }
  throw std::logic_error("eval_interval: unknown op");
}

}  // namespace

Interval eval_interval(const Expr& e, const Box& box, const IntervalOptions& opts) {
  const int top = max_variable_index(e);
  if (static_cast<std::size_t>(top) > box.dim()) {
    throw DimensionError("expression uses x" + std::to_string(top) + " but box has dimension " +
                         std::to_string(box.dim()));
  }
  if (top == 0) {
    const Point none;
    return Interval(eval(e, none));
  }
  try {
    return enclose(e, box, opts.division).widen(opts.slack);
  } catch (const InvalidBoundsError&) {
    throw EvalError("interval evaluation produced an undefined enclosure");
  }
}

}  // namespace mixmono
