int ordclust_placeholder_test_fcm = 0;
