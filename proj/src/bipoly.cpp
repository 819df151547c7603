#include "isurf/bipoly.hpp"

namespace isurf {

template class BiPoly<Rat>;
template class BiPoly<GaussRat>;

template BiPoly<Rat> gcd<Rat>(const BiPoly<Rat>&, const BiPoly<Rat>&);
template BiPoly<GaussRat> gcd<GaussRat>(const BiPoly<GaussRat>&, const BiPoly<GaussRat>&);
template BiPoly<Rat> gcd3<Rat>(const BiPoly<Rat>&, const BiPoly<Rat>&, const BiPoly<Rat>&);
template BiPoly<Rat> divide_exact<Rat>(const BiPoly<Rat>&, const BiPoly<Rat>&);
template BiPoly<GaussRat> divide_exact<GaussRat>(const BiPoly<GaussRat>&,
                                                 const BiPoly<GaussRat>&);
template BiPoly<Rat> flip<Rat>(const BiPoly<Rat>&, Axis, int);
template std::string to_string<Rat>(const BiPoly<Rat>&);
template std::string to_string<GaussRat>(const BiPoly<GaussRat>&);

}  // namespace isurf
