#pragma once

#include "uftree/canonical.hpp"
#include "uftree/certificate_text.hpp"
#include "uftree/error.hpp"
#include "uftree/forest.hpp"
#include "uftree/generators.hpp"
#include "uftree/ops.hpp"
#include "uftree/oracle.hpp"
#include "uftree/partition.hpp"
#include "uftree/recognizer.hpp"
#include "uftree/reduction.hpp"
#include "uftree/text_format.hpp"
#include "uftree/tree.hpp"
