#include "dtl/errors.hpp"
