Calendar calendar = Calendar.getInstance();
int week = 3;
int year = 2011;
calendar.set(Calendar.WEEK_OF_YEAR, week);
calendar.set(Calendar.YEAR, year);
Date date = calendar.getTime();
