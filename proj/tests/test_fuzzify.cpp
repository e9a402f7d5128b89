int ordclust_placeholder_test_fuzzify = 0;
