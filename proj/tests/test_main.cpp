#include "support/testkit.hpp"

int main() { return testkit::run_all(); }
