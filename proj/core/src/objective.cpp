#include "steklov/objective.hpp"

#include <memory>

#include "steklov/error.hpp"

namespace steklov {

ObjectiveFunction ObjectiveFunction::from_polynomial(Polynomial p, std::string label) {
  auto d1 = std::make_shared<const Polynomial>(differentiate(p));
  auto d2 = std::make_shared<const Polynomial>(differentiate(*d1));
  auto p0 = std::make_shared<const Polynomial>(p);
  ObjectiveFunction obj;
  obj.f = [p0](double x) { return (*p0)(x); };
  obj.df = [d1](double x) { return (*d1)(x); };
  obj.d2f = [d2](double x) { return (*d2)(x); };
  obj.poly = std::move(p);
  obj.label = std::move(label);
  return obj;
}

ObjectiveFunction ObjectiveFunction::from_functions(ScalarFn f, ScalarFn df, ScalarFn d2f,
                                                    std::string label) {
  if (!f || !df) throw Error(ErrorCode::InvalidArgument, "objective needs f and df");
  ObjectiveFunction obj;
  obj.f = std::move(f);
  obj.df = std::move(df);
  obj.d2f = std::move(d2f);
  obj.label = std::move(label);
  return obj;
}

}  // namespace steklov
