#pragma once

#include "ovalens/conic.hpp"
#include "ovalens/error.hpp"
#include "ovalens/geometry.hpp"
#include "ovalens/io.hpp"
#include "ovalens/ode.hpp"
#include "ovalens/oval.hpp"
#include "ovalens/raytrace.hpp"
#include "ovalens/revolution.hpp"
#include "ovalens/snell.hpp"
#include "ovalens/verify.hpp"
