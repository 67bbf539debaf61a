#pragma once

#include "bidim.hpp"
#include "cache.hpp"
#include "checks.hpp"
#include "corpus.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "hierarchy.hpp"
#include "layouts.hpp"
#include "locality.hpp"
#include "median.hpp"
#include "random.hpp"
#include "report.hpp"
#include "trace.hpp"
#include "version.hpp"
