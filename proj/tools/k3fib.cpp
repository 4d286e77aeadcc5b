#include <cstdio>
int main(){ std::puts("k3fib"); return 0; }
