int ordclust_placeholder_test_eval = 0;
