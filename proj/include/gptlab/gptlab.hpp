#ifndef GPTLAB_GPTLAB_HPP
#define GPTLAB_GPTLAB_HPP

#include "cone.hpp"
#include "contextuality.hpp"
#include "corpus.hpp"
#include "error.hpp"
#include "gpt.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "report.hpp"
#include "resources.hpp"

#endif
