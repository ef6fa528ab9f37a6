#include <limits.h>

int add_counts(int a, int b) {
  return a + b;
}

int main(void) {
  int a = nondet_int();
  int b = nondet_int();
  __CPROVER_assume(a >= INT_MAX - 8 && b >= 0 && b <= 16);
  /* a near INT_MAX with b up to 16 wraps the signed addition */
  return add_counts(a, b);
}
