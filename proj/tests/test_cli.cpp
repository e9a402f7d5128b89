int ordclust_placeholder_test_cli = 0;
