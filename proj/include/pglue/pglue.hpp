#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "poset.hpp"
#include "rep.hpp"
#include "complex.hpp"
#include "cofibrant.hpp"
#include "random.hpp"
#include "report.hpp"
#include "sixfun.hpp"
#include "glue.hpp"
#include "compass.hpp"
#include "perversity.hpp"
#include "io.hpp"
