int ordclust_placeholder_test_ordinal = 0;
